use num_complex::Complex64;

use crate::error::{Error, Result};

/// Highest total order `j + k` kept in a [`MomentTable`].
pub const MAX_ORDER: usize = 4;

/// Normally ordered moments `m_{jk} = ⟨a†^j a^k⟩` for `j + k ≤ 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentTable {
    entries: [[Complex64; MAX_ORDER + 1]; MAX_ORDER + 1],
}

impl MomentTable {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = [[Complex64::new(0.0, 0.0); MAX_ORDER + 1]; MAX_ORDER + 1];
        for (j, row) in entries.iter_mut().enumerate() {
            for (k, e) in row.iter_mut().enumerate().take(MAX_ORDER + 1 - j) {
                *e = f(j, k);
            }
        }
        Self { entries }
    }

    /// Iterates `(j, k)` over every stored index pair.
    pub fn indices() -> impl Iterator<Item = (usize, usize)> {
        (0..=MAX_ORDER).flat_map(|j| (0..=MAX_ORDER - j).map(move |k| (j, k)))
    }

    /// `⟨a†^j a^k⟩`.
    ///
    /// Panics when `j + k > 4`.
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        assert!(j + k <= MAX_ORDER, "moment order {} exceeds {MAX_ORDER}", j + k);
        self.entries[j][k]
    }

    pub fn norm(&self) -> f64 {
        self.entries[0][0].re
    }

    /// `⟨a⟩`
    pub fn mean_a(&self) -> Complex64 {
        self.get(0, 1)
    }

    /// `⟨a²⟩`
    pub fn mean_a2(&self) -> Complex64 {
        self.get(0, 2)
    }

    /// `⟨a†a⟩`
    pub fn mean_n(&self) -> f64 {
        self.get(1, 1).re
    }

    /// `⟨a†²a²⟩`
    pub fn mean_ad2_a2(&self) -> f64 {
        self.get(2, 2).re
    }

    /// Variances of `X = (a + a†)/2` and `Y = (a − a†)/2i`.
    pub fn quadrature_variances(&self) -> (f64, f64) {
        let a = self.mean_a();
        let a2 = self.mean_a2().re;
        let n = self.mean_n();
        let vx = (2.0 * a2 + 2.0 * n + 1.0) / 4.0 - a.re * a.re;
        let vy = (-2.0 * a2 + 2.0 * n + 1.0) / 4.0 - a.im * a.im;
        (vx, vy)
    }

    /// `(⟨a†²a²⟩ − ⟨a†a⟩²) / ⟨a†a⟩`
    pub fn mandel_q(&self) -> Result<f64> {
        let n = self.mean_n();
        if n.abs() <= f64::EPSILON * 16.0 {
            return Err(Error::DegenerateDenominator);
        }
        Ok((self.mean_ad2_a2() - n * n) / n)
    }

    /// Largest `|m_{jk} − other_{jk}|` over the table.
    pub fn max_abs_diff(&self, other: &MomentTable) -> f64 {
        Self::indices().map(|(j, k)| (self.get(j, k) - other.get(j, k)).norm()).fold(0.0, f64::max)
    }

    /// Largest `|m_{jk} − conj(m_{kj})|`; zero for a physical state.
    pub fn hermiticity_defect(&self) -> f64 {
        Self::indices().map(|(j, k)| (self.get(j, k) - self.get(k, j).conj()).norm()).fold(0.0, f64::max)
    }
}
