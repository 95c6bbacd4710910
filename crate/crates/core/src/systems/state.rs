use crate::spectral::{bessel_apply, derivative, sobolev_norm, Field, PeriodicGrid, SobolevIndex};
use crate::{Error, Result};

/// `(u, w, v, z)`, where a genuine solution has `w = u_x` and `z = v_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    u: Field,
    w: Field,
    v: Field,
    z: Field,
}

impl State {
    pub fn new(u: Field, w: Field, v: Field, z: Field) -> Result<Self> {
        u.check_grid(&w)?;
        u.check_grid(&v)?;
        u.check_grid(&z)?;
        Ok(Self { u, w, v, z })
    }

    /// Consistent state with `w = u_x`, `z = v_x` formed spectrally.
    pub fn from_uv(u: Field, v: Field) -> Result<Self> {
        u.check_grid(&v)?;
        let w = derivative(&u);
        let z = derivative(&v);
        Ok(Self { u, w, v, z })
    }

    pub fn zeros(grid: PeriodicGrid) -> Self {
        let zero = Field::zeros(grid);
        Self {
            u: zero.clone(),
            w: zero.clone(),
            v: zero.clone(),
            z: zero,
        }
    }

    pub fn u(&self) -> &Field {
        &self.u
    }
    pub fn w(&self) -> &Field {
        &self.w
    }
    pub fn v(&self) -> &Field {
        &self.v
    }
    pub fn z(&self) -> &Field {
        &self.z
    }

    pub fn grid(&self) -> PeriodicGrid {
        self.u.grid()
    }

    pub fn fields(&self) -> [&Field; 4] {
        [&self.u, &self.w, &self.v, &self.z]
    }

    pub fn into_parts(self) -> (Field, Field, Field, Field) {
        (self.u, self.w, self.v, self.z)
    }

    pub fn map(&self, f: impl Fn(&Field) -> Field) -> Self {
        Self {
            u: f(&self.u),
            w: f(&self.w),
            v: f(&self.v),
            z: f(&self.z),
        }
    }

    pub fn scale(&self, a: f64) -> Self {
        self.map(|f| f.scale(a))
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: f64, other: &State) -> Result<Self> {
        if self.grid() != other.grid() {
            return Err(Error::GridMismatch(self.grid().len(), other.grid().len()));
        }
        Ok(Self {
            u: self.u.axpy(a, &other.u)?,
            w: self.w.axpy(a, &other.w)?,
            v: self.v.axpy(a, &other.v)?,
            z: self.z.axpy(a, &other.z)?,
        })
    }

    pub fn is_finite(&self) -> bool {
        self.fields().iter().all(|f| f.is_finite())
    }

    /// `‖U‖ + ‖V‖ = ‖u‖ + ‖w‖ + ‖v‖ + ‖z‖` in `H^s`.
    pub fn norm(&self, s: SobolevIndex) -> f64 {
        self.fields().iter().map(|f| sobolev_norm(f, s)).sum()
    }

    /// `‖U‖_{H^s} = ‖u‖ + ‖w‖`.
    pub fn norm_u_pair(&self, s: SobolevIndex) -> f64 {
        sobolev_norm(&self.u, s) + sobolev_norm(&self.w, s)
    }

    /// `‖V‖_{H^s} = ‖v‖ + ‖z‖`.
    pub fn norm_v_pair(&self, s: SobolevIndex) -> f64 {
        sobolev_norm(&self.v, s) + sobolev_norm(&self.z, s)
    }

    /// `‖w - u_x‖_{H^s} + ‖z - v_x‖_{H^s}`.
    pub fn consistency_residual(&self, s: SobolevIndex) -> f64 {
        sobolev_norm(&(&self.w - &derivative(&self.u)), s)
            + sobolev_norm(&(&self.z - &derivative(&self.v)), s)
    }

    /// Parity-time image: `(u, w, v, z)(x) -> (v, -z, u, -w)(-x)`. The
    /// system's right-hand side anticommutes with this map.
    pub fn pt_image(&self) -> Self {
        Self {
            u: self.v.reflect(),
            w: self.z.reflect().scale(-1.0),
            v: self.u.reflect(),
            z: self.w.reflect().scale(-1.0),
        }
    }

    pub fn without_nyquist(&self) -> Self {
        self.map(Field::without_nyquist)
    }
}

/// `m = u - u_xx`, `n = v - v_xx`.
#[derive(Clone, Debug)]
pub struct Momentum {
    pub m: Field,
    pub n: Field,
}

pub fn momentum_from_state(st: &State) -> Momentum {
    let two = SobolevIndex::new(2.0).expect("finite");
    Momentum {
        m: bessel_apply(st.u(), two),
        n: bessel_apply(st.v(), two),
    }
}
