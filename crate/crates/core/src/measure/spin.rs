//! Post-measurement density matrices for a spin-½ prepared along +z.

/// Result of measuring σₓ on the state polarized along +z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinDemo {
    pub initial: [[f64; 2]; 2],
    pub plus_x: [[f64; 2]; 2],
    pub minus_x: [[f64; 2]; 2],
    pub trace_plus: f64,
    pub trace_minus: f64,
}

type M2 = [[f64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn transpose(a: &M2) -> M2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

/// T ρ₀ T† for the two projectors onto ±x.
pub fn spin_measurement_demo() -> SpinDemo {
    let initial = [[1.0, 0.0], [0.0, 0.0]];
    let project_plus = [[0.5, 0.5], [0.5, 0.5]];
    let project_minus = [[0.5, -0.5], [-0.5, 0.5]];
    let after = |t: &M2| mul(&mul(t, &initial), &transpose(t));
    let plus_x = after(&project_plus);
    let minus_x = after(&project_minus);
    SpinDemo {
        initial,
        plus_x,
        minus_x,
        trace_plus: plus_x[0][0] + plus_x[1][1],
        trace_minus: minus_x[0][0] + minus_x[1][1],
    }
}
