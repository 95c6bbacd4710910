//! Conserved functionals of the bi-Hamiltonian structure, evaluated with
//! the rectangle rule on grid nodes (spectrally accurate for periodic
//! integrands).

use super::state::{momentum_from_state, State};

/// `H₁ = ∫ m (v + v_x) dx`.
pub fn hamiltonian_h1(st: &State) -> f64 {
    let mom = momentum_from_state(st);
    let dx = st.grid().spacing();
    mom.m
        .values()
        .iter()
        .zip(st.v().values())
        .zip(st.z().values())
        .map(|((m, v), z)| m * (v + z))
        .sum::<f64>()
        * dx
}

/// `H₂ = ½ ∫ (u − u_x)² (v + v_x) n dx`.
pub fn hamiltonian_h2(st: &State) -> f64 {
    let mom = momentum_from_state(st);
    let dx = st.grid().spacing();
    let [u, w, v, z] = st.fields().map(|f| f.values());
    (0..st.grid().len())
        .map(|j| {
            let a = u[j] - w[j];
            a * a * (v[j] + z[j]) * mom.n.values()[j]
        })
        .sum::<f64>()
        * dx
        * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Field, PeriodicGrid};
    use std::f64::consts::PI;

    fn state(u: fn(f64) -> f64, v: fn(f64) -> f64) -> State {
        let g = PeriodicGrid::new(32).unwrap();
        State::from_uv(Field::from_fn(g, u), Field::from_fn(g, v)).unwrap()
    }

    #[test]
    fn h1_examples() {
        assert!((hamiltonian_h1(&state(f64::cos, f64::cos)) - 2.0 * PI).abs() < 1e-12);
        assert_eq!(hamiltonian_h1(&state(|_| 0.0, |_| 0.0)), 0.0);
        assert!(hamiltonian_h1(&state(f64::cos, |_| 0.0)).abs() < 1e-15);
    }

    #[test]
    fn h2_examples() {
        assert!((hamiltonian_h2(&state(f64::cos, f64::cos)) - 0.5 * PI).abs() < 1e-12);
        assert_eq!(hamiltonian_h2(&state(|_| 0.0, |_| 0.0)), 0.0);
        assert!(hamiltonian_h2(&state(|_| 0.0, f64::sin)).abs() < 1e-15);
    }
}
