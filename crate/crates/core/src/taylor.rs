//! Truncated Taylor series for exact derivatives of polynomial products.

use std::ops::{Add, Mul};

/// Coefficients up to the fourth derivative.
pub(crate) const TERMS: usize = 5;

const FACTORIAL: [f64; TERMS] = [1.0, 1.0, 2.0, 6.0, 24.0];

/// `sum_k c[k] h^k` about some expansion point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jet(pub [f64; TERMS]);

impl Jet {
    pub fn constant(c: f64) -> Self {
        let mut t = [0.0; TERMS];
        t[0] = c;
        Jet(t)
    }

    /// `(x - root) * scale` expanded about `x0`.
    pub fn linear(x0: f64, root: f64, scale: f64) -> Self {
        let mut t = [0.0; TERMS];
        t[0] = (x0 - root) * scale;
        t[1] = scale;
        Jet(t)
    }

    pub fn powi(self, p: u32) -> Self {
        (0..p).fold(Jet::constant(1.0), |acc, _| acc * self)
    }

    pub fn derivative(&self, k: usize) -> f64 {
        self.0[k] * FACTORIAL[k]
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; TERMS];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in rhs.0[..TERMS - i].iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Jet(c)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Jet(c)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        Jet(rhs.0.map(|v| self * v))
    }
}
