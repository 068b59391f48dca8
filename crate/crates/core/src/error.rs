use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("fusion coefficient is not integral (deviation {0:.3e})")]
    NonIntegralFusion(f64),
    #[error("Frobenius-Schur indicator is not in {{-1, 0, 1}} (value {0:.6})")]
    NonIntegralIndicator(f64),
    #[error("quadratic form is degenerate")]
    DegenerateForm,
    #[error("unsupported level {0}")]
    UnsupportedLevel(u32),
    #[error("invalid category data: {0}")]
    InvalidData(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("morphism is not an orthogonal projection (residual {0:.3e})")]
    NotAProjection(f64),
    #[error("subgroup is not isotropic: twist of {0} is not 1")]
    NotIsotropic(String),
    #[error("restricted associator is not trivial on the subgroup")]
    NonTrivialCocycle,
    #[error("label map is not a braided equivalence: {0}")]
    NotAnEquivalence(String),
    #[error("projection is incompatible with the multiplication (residual {0:.3e})")]
    IncompatibleProjection(f64),
    #[error("label map fixes the non-unit simple {0}")]
    HasFixedPoint(String),
    #[error("Q-system is not irreducible")]
    NotIrreducible,
    #[error("objects live in different categories")]
    CategoryMismatch,
    #[error("category is not a Deligne product")]
    NotAProduct,
    #[error("search budget exceeded ({0} lattice points)")]
    SearchBudgetExceeded(u128),
}
