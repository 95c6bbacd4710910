//! Right-hand sides.
//!
//! The first-order system in `(u, w, v, z)` is written out term by term.
//! Its nonlocal parts are
//!
//! ```text
//! F = D⁻²(X) + D⁻²∂ₓ(Y),          G = D⁻²∂ₓ(X) + D⁻²(Y)
//! F̂ = D⁻²(X̂) + D⁻²∂ₓ(Ŷ),          Ĝ = D⁻²∂ₓ(X̂) + D⁻²(Ŷ)
//!
//! X = ⅓w²z + {u w z' − w w' v + ⅓u(u z'' − w'' v)}
//! Y = ⅔u²v + w²v + B
//! X̂ = ⅓w z² − {u z z' − w' v z + ⅓v(u z'' − w'' v)}
//! Ŷ = ⅔u v² + u z² + B̂
//! B = −u w' z + w w' v − u w v + u² z + ⅓(w w' z − w² z')
//! B̂ = w v z' − u z z' + u v z − w v² + ⅓(w z z' − w' z²)
//! ```
//!
//! The mollified variant applies `J_ε` exactly where the regularised
//! system does: to the transport-type local terms of the `w`/`z`
//! equations (built from mollified factors `f^ε = J_ε f`) and to the
//! third-derivative composite inside `G`, `Ĝ`. With `J_ε = I` the two
//! coincide, so a single evaluator serves both.

use std::cell::RefCell;
use std::collections::HashMap;

use super::state::{momentum_from_state, Momentum, State};
use crate::spectral::{
    derivative, helmholtz_inverse, helmholtz_multiplier_dx, mollify, nth_derivative, Field, Padded,
};
use crate::{Error, Result};

const THIRD: f64 = 1.0 / 3.0;

// Factor slots. Mollified copies live at `slot + MOLL`.
const U: usize = 0;
const W: usize = 1;
const V: usize = 2;
const Z: usize = 3;
const WX: usize = 4;
const ZX: usize = 5;
const WXX: usize = 6;
const ZXX: usize = 7;
const MOLL: usize = 8;

#[inline]
fn m(slot: usize) -> usize {
    slot + MOLL
}

struct Bank {
    factors: Vec<Padded>,
    pairs: RefCell<HashMap<(usize, usize), Padded>>,
    eps: Option<f64>,
}

impl Bank {
    fn new(st: &State, eps: Option<f64>) -> Result<Self> {
        let base = |u: &Field, w: &Field, v: &Field, z: &Field| {
            vec![
                Padded::lift(u),
                Padded::lift(w),
                Padded::lift(v),
                Padded::lift(z),
                Padded::lift(&derivative(w)),
                Padded::lift(&derivative(z)),
                Padded::lift(&nth_derivative(w, 2)),
                Padded::lift(&nth_derivative(z, 2)),
            ]
        };
        let mut factors = base(st.u(), st.w(), st.v(), st.z());
        if let Some(eps) = eps {
            let [u, w, v, z] = st.fields().map(|f| mollify(f, eps));
            factors.extend(base(&u?, &w?, &v?, &z?));
        }
        Ok(Self {
            factors,
            pairs: RefCell::new(HashMap::new()),
            eps,
        })
    }

    fn factor(&self, slot: usize) -> &Padded {
        if slot >= MOLL && self.eps.is_none() {
            &self.factors[slot - MOLL]
        } else {
            &self.factors[slot]
        }
    }

    fn canonical(&self, slot: usize) -> usize {
        if slot >= MOLL && self.eps.is_none() {
            slot - MOLL
        } else {
            slot
        }
    }

    /// Untruncated product of two factors, cached.
    fn pair(&self, a: usize, b: usize) -> Padded {
        let (a, b) = (self.canonical(a), self.canonical(b));
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(p) = self.pairs.borrow().get(&key) {
            return p.clone();
        }
        let p = self.factor(key.0).mul_raw(self.factor(key.1));
        self.pairs.borrow_mut().insert(key, p.clone());
        p
    }

    /// `a b c` on the fine grid.
    fn cubic(&self, a: usize, b: usize, c: usize) -> Padded {
        self.pair(a, b).mul_raw(self.factor(c))
    }

    /// `x (a b − c d)` on the fine grid.
    fn times_difference(&self, x: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> Padded {
        let diff = &self.pair(a, b) - &self.pair(c, d);
        self.factor(x).mul_raw(&diff)
    }

    fn grid_zero(&self) -> Padded {
        Padded::zeros(self.factors[0].grid())
    }

    /// `J_ε` on a projected accumulator, identity when unmollified.
    fn mollified(&self, acc: &Padded) -> Result<Field> {
        let f = acc.project();
        match self.eps {
            Some(eps) => mollify(&f, eps),
            None => Ok(f),
        }
    }
}

/// Sum of `coef * term` accumulated on the fine grid.
fn sum(bank: &Bank, terms: &[(f64, Padded)]) -> Padded {
    let mut acc = bank.grid_zero();
    for (c, t) in terms {
        acc.add_scaled(*c, t);
    }
    acc
}

fn b_term(k: &Bank) -> Padded {
    sum(
        k,
        &[
            (-1.0, k.cubic(U, WX, Z)),
            (1.0, k.cubic(W, WX, V)),
            (-1.0, k.cubic(U, W, V)),
            (1.0, k.cubic(U, U, Z)),
            (THIRD, k.cubic(W, WX, Z)),
            (-THIRD, k.cubic(W, W, ZX)),
        ],
    )
}

fn b_hat_term(k: &Bank) -> Padded {
    sum(
        k,
        &[
            (1.0, k.cubic(W, V, ZX)),
            (-1.0, k.cubic(U, Z, ZX)),
            (1.0, k.cubic(U, V, Z)),
            (-1.0, k.cubic(W, V, V)),
            (THIRD, k.cubic(W, Z, ZX)),
            (-THIRD, k.cubic(WX, Z, Z)),
        ],
    )
}

/// `u(u z'' − w'' v)` built from the factors in `slots`.
fn third_order_u(k: &Bank, u: usize, zxx: usize, wxx: usize, v: usize) -> Padded {
    k.times_difference(u, (u, zxx), (wxx, v))
}

fn evaluate(st: &State, eps: Option<f64>) -> Result<State> {
    let k = Bank::new(st, eps)?;

    let y = {
        let mut acc = sum(
            &k,
            &[(2.0 * THIRD, k.cubic(U, U, V)), (1.0, k.cubic(W, W, V))],
        );
        acc.add_scaled(1.0, &b_term(&k));
        acc.project()
    };
    let y_hat = {
        let mut acc = sum(
            &k,
            &[(2.0 * THIRD, k.cubic(U, V, V)), (1.0, k.cubic(U, Z, Z))],
        );
        acc.add_scaled(1.0, &b_hat_term(&k));
        acc.project()
    };

    // X, X̂ without the third-order composite.
    let x_low = sum(
        &k,
        &[
            (THIRD, k.cubic(W, W, Z)),
            (1.0, k.cubic(U, W, ZX)),
            (-1.0, k.cubic(W, WX, V)),
        ],
    );
    let x_hat_low = sum(
        &k,
        &[
            (THIRD, k.cubic(W, Z, Z)),
            (-1.0, k.cubic(U, Z, ZX)),
            (1.0, k.cubic(WX, V, Z)),
        ],
    );

    // u-equation: never mollified.
    let du = {
        let local = sum(
            &k,
            &[
                (-THIRD, k.cubic(W, W, Z)),
                (2.0 * THIRD, k.cubic(U, W, V)),
                (THIRD, k.cubic(U, U, Z)),
            ],
        );
        let mut x = x_low.clone();
        x.add_scaled(THIRD, &third_order_u(&k, U, ZXX, WXX, V));
        &(&local.project() + &helmholtz_inverse(&x.project())) + &helmholtz_multiplier_dx(&y)
    };

    let dv = {
        let local = sum(
            &k,
            &[
                (-THIRD, k.cubic(W, Z, Z)),
                (2.0 * THIRD, k.cubic(U, V, Z)),
                (THIRD, k.cubic(W, V, V)),
            ],
        );
        let mut x = x_hat_low.clone();
        x.add_scaled(-THIRD, &k.times_difference(V, (U, ZXX), (WXX, V)));
        &(&local.project() + &helmholtz_inverse(&x.project())) + &helmholtz_multiplier_dx(&y_hat)
    };

    let dw = {
        let plain = sum(
            &k,
            &[
                (-THIRD, k.cubic(W, W, V)),
                (4.0 * THIRD, k.cubic(U, W, Z)),
                (-2.0 * THIRD, k.cubic(U, U, V)),
                // {.. + u w v − u² z}
                (1.0, k.cubic(U, W, V)),
                (-1.0, k.cubic(U, U, Z)),
            ],
        );
        let smoothed = sum(
            &k,
            &[
                (-1.0, k.cubic(m(W), m(WX), m(Z))),
                (2.0 * THIRD, k.cubic(m(U), m(WX), m(V))),
                (THIRD, k.cubic(m(U), m(U), m(ZX))),
                // {J(u w' z − w w' v) ..}
                (1.0, k.cubic(m(U), m(WX), m(Z))),
                (-1.0, k.cubic(m(W), m(WX), m(V))),
            ],
        );
        let x_smoothed = third_order_u(&k, m(U), m(ZXX), m(WXX), m(V)).scale(THIRD);
        let x = &x_low.project() + &k.mollified(&x_smoothed)?;
        let mut out = &plain.project() + &k.mollified(&smoothed)?;
        out = &out + &helmholtz_multiplier_dx(&x);
        &out + &helmholtz_inverse(&y)
    };

    let dz = {
        let plain = sum(
            &k,
            &[
                (-THIRD, k.cubic(U, Z, Z)),
                (4.0 * THIRD, k.cubic(W, V, Z)),
                (-2.0 * THIRD, k.cubic(U, V, V)),
                // −{.. + u v z − w v²}
                (-1.0, k.cubic(U, V, Z)),
                (1.0, k.cubic(W, V, V)),
            ],
        );
        let smoothed = sum(
            &k,
            &[
                (-1.0, k.cubic(m(W), m(Z), m(ZX))),
                (2.0 * THIRD, k.cubic(m(U), m(V), m(ZX))),
                (THIRD, k.cubic(m(WX), m(V), m(V))),
                // −{J(w v z' − u z z') ..}
                (-1.0, k.cubic(m(W), m(V), m(ZX))),
                (1.0, k.cubic(m(U), m(Z), m(ZX))),
            ],
        );
        // The outer factor is the unmollified v, as in the regularised system.
        let x_smoothed = k
            .times_difference(V, (m(U), m(ZXX)), (m(WXX), m(V)))
            .scale(-THIRD);
        let x = &x_hat_low.project() + &k.mollified(&x_smoothed)?;
        let mut out = &plain.project() + &k.mollified(&smoothed)?;
        out = &out + &helmholtz_multiplier_dx(&x);
        &out + &helmholtz_inverse(&y_hat)
    };

    Ok(State::new(du, dw, dv, dz)?.without_nyquist())
}

/// Time derivative of `(u, w, v, z)` for the first-order system.
pub fn reformulated_rhs(st: &State) -> State {
    evaluate(st, None).expect("unmollified evaluation cannot fail")
}

/// Time derivative for the mollified system. Rejects `ε <= 0`.
pub fn mollified_rhs(st: &State, eps: f64) -> Result<State> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "mollifier width must be positive, got {eps}"
        )));
    }
    evaluate(st, Some(eps))
}

/// Dispatches on `eps`: `0` selects the unmollified system.
pub fn rhs(st: &State, eps: f64) -> Result<State> {
    if eps == 0.0 {
        Ok(reformulated_rhs(st))
    } else {
        mollified_rhs(st, eps)
    }
}

/// `(m_t, n_t) = (∂ₓ[m (u − w)(v + z)], ∂ₓ[n (u − w)(v + z)])`.
pub fn conservative_rhs(mom: &Momentum, st: &State) -> Result<(Field, Field)> {
    mom.m.check_grid(st.u())?;
    mom.n.check_grid(st.u())?;
    let left = Padded::lift(&(st.u() - st.w()));
    let right = Padded::lift(&(st.v() + st.z()));
    let speed = left.mul_raw(&right);
    let dm = derivative(&Padded::lift(&mom.m).mul_raw(&speed).project());
    let dn = derivative(&Padded::lift(&mom.n).mul_raw(&speed).project());
    Ok((dm, dn))
}

/// Conservative form pushed through `D⁻²`, i.e. `(u_t, v_t)` recovered
/// from `(m_t, n_t)`.
pub fn conservative_velocity(st: &State) -> (Field, Field) {
    let (dm, dn) = conservative_rhs(&momentum_from_state(st), st).expect("state shares one grid");
    (helmholtz_inverse(&dm), helmholtz_inverse(&dn))
}

/// Curly-bracketed terms and `B`, `B̂`; all vanish when `v = u`, `z = w`.
#[derive(Clone, Debug)]
pub struct BracketTerms {
    /// `u w z' − w w' v + ⅓u(u z'' − w'' v)`
    pub x_curly: Field,
    /// `u z z' − w' v z + ⅓v(u z'' − w'' v)`
    pub x_hat_curly: Field,
    /// `u w' z − w w' v + u w v − u² z`
    pub w_curly: Field,
    /// `w v z' − u z z' + u v z − w v²`
    pub z_curly: Field,
    pub b: Field,
    pub b_hat: Field,
}

impl BracketTerms {
    pub fn fields(&self) -> [&Field; 6] {
        [
            &self.x_curly,
            &self.x_hat_curly,
            &self.w_curly,
            &self.z_curly,
            &self.b,
            &self.b_hat,
        ]
    }
}

pub fn bracket_terms(st: &State) -> BracketTerms {
    let k = Bank::new(st, None).expect("unmollified bank");
    let mut x_curly = sum(&k, &[(1.0, k.cubic(U, W, ZX)), (-1.0, k.cubic(W, WX, V))]);
    x_curly.add_scaled(THIRD, &third_order_u(&k, U, ZXX, WXX, V));
    let mut x_hat_curly = sum(&k, &[(1.0, k.cubic(U, Z, ZX)), (-1.0, k.cubic(WX, V, Z))]);
    x_hat_curly.add_scaled(THIRD, &k.times_difference(V, (U, ZXX), (WXX, V)));
    let w_curly = sum(
        &k,
        &[
            (1.0, k.cubic(U, WX, Z)),
            (-1.0, k.cubic(W, WX, V)),
            (1.0, k.cubic(U, W, V)),
            (-1.0, k.cubic(U, U, Z)),
        ],
    );
    let z_curly = sum(
        &k,
        &[
            (1.0, k.cubic(W, V, ZX)),
            (-1.0, k.cubic(U, Z, ZX)),
            (1.0, k.cubic(U, V, Z)),
            (-1.0, k.cubic(W, V, V)),
        ],
    );
    BracketTerms {
        x_curly: x_curly.project(),
        x_hat_curly: x_hat_curly.project(),
        w_curly: w_curly.project(),
        z_curly: z_curly.project(),
        b: b_term(&k).project(),
        b_hat: b_hat_term(&k).project(),
    }
}
