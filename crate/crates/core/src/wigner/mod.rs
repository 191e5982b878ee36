//! Wigner functions of prepared states of the damped oscillator.

mod characteristic;
mod states;
mod sum;

pub use characteristic::{CharacteristicFactor, FactorKind, WignerCharacteristic};
pub use states::{
    cat_wigner, coherent_center, coherent_pair, coherent_pair_attenuation, coherent_pair_decoherence_time,
    coherent_pair_exponent, coherent_pair_pdist, coherent_wigner, displaced_pair_wigner, equilibrium_characteristic,
    equilibrium_wigner, squeezed_coefficients, squeezed_wigner, weisskopf_wigner_exponent, CatWigner, CoherentPair,
    PreparedWigner,
};
pub use sum::{density_matrix_element, wigner_marginal, Axis, Modulation, WignerGaussianSum, WignerTerm};
