use crate::spectral::{derivative, nth_derivative, Field, Padded};
use crate::Result;

/// `(m̃, ñ)` of the mKdV-hierarchy pair.
#[derive(Clone, Debug)]
pub struct HierarchyState {
    pub mt: Field,
    pub nt: Field,
}

impl HierarchyState {
    pub fn new(mt: Field, nt: Field) -> Result<Self> {
        mt.check_grid(&nt)?;
        Ok(Self { mt, nt })
    }
}

/// `(−m̃''' − 6 m̃ ñ m̃', −ñ''' − 6 ñ m̃ ñ')`. Reduces to mKdV for `ñ = m̃`
/// and to the nonlocal mKdV for `ñ(x,t) = m̃(−x,−t)`.
pub fn mkdv_hierarchy_rhs(hs: &HierarchyState) -> Result<HierarchyState> {
    hs.mt.check_grid(&hs.nt)?;
    let mn = Padded::lift(&hs.mt).mul_raw(&Padded::lift(&hs.nt));
    let dm = &(-&nth_derivative(&hs.mt, 3))
        - &mn
            .mul_raw(&Padded::lift(&derivative(&hs.mt)))
            .project()
            .scale(6.0);
    let dn = &(-&nth_derivative(&hs.nt, 3))
        - &mn
            .mul_raw(&Padded::lift(&derivative(&hs.nt)))
            .project()
            .scale(6.0);
    HierarchyState::new(dm, dn)
}

/// Scalar mKdV, `−m''' − 6 m² m'`.
pub fn mkdv_rhs(mt: &Field) -> Field {
    let sq = Padded::lift(mt).mul_raw(&Padded::lift(mt));
    &(-&nth_derivative(mt, 3))
        - &sq
            .mul_raw(&Padded::lift(&derivative(mt)))
            .project()
            .scale(6.0)
}
