//! The weight catalog for the analytic 1-D backend.
//!
//! Each catalog weight carries a closed-form antiderivative, so ball measures
//! on catalog spaces are exact up to rounding. Reweighted spaces compose a
//! base weight with a positive factor; their antiderivative is tabulated on a
//! grid and evaluated through a cubic Hermite interpolant with exact slopes
//! (the slope at a knot is the weight itself).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meanvalue::FieldFunction;
use crate::space::quad;

/// Closed-form catalog entries. `PowerQ` realizes `mu(B(x,r)) = C * r^Q`;
/// on a one-dimensional line that forces `Q = 1` (a constant weight), which
/// the constructor enforces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "weight", rename_all = "snake_case")]
pub enum CatalogWeight {
    /// w = 1
    Lebesgue,
    /// w = |x|
    AbsX,
    /// w = e^{-x}
    ExpNegX,
    /// w = e^{-|x|}
    ExpNegAbsX,
    /// w = 2 cosh x
    TwoCosh,
    /// Constant weight c/2 so that mu(B(x,r)) = c * r.
    PowerQ { c: f64, q: f64 },
}

impl CatalogWeight {
    pub fn validate(&self) -> Result<()> {
        if let CatalogWeight::PowerQ { c, q } = self {
            if !(*c > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "power_q weight needs c > 0, got {c}"
                )));
            }
            if (*q - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidInput(format!(
                    "power_q weight on the 1-d analytic backend is representable only for q = 1, got {q}"
                )));
            }
        }
        Ok(())
    }

    /// Weight density w(x).
    pub fn w(&self, x: f64) -> f64 {
        match self {
            CatalogWeight::Lebesgue => 1.0,
            CatalogWeight::AbsX => x.abs(),
            CatalogWeight::ExpNegX => (-x).exp(),
            CatalogWeight::ExpNegAbsX => (-x.abs()).exp(),
            CatalogWeight::TwoCosh => 2.0 * x.cosh(),
            CatalogWeight::PowerQ { c, .. } => 0.5 * c,
        }
    }

    /// Antiderivative W(x) with W' = w.
    pub fn antiderivative(&self, x: f64) -> f64 {
        match self {
            CatalogWeight::Lebesgue => x,
            CatalogWeight::AbsX => 0.5 * x * x.abs(),
            CatalogWeight::ExpNegX => -(-x).exp(),
            CatalogWeight::ExpNegAbsX => x.signum() * (1.0 - (-x.abs()).exp()),
            CatalogWeight::TwoCosh => 2.0 * x.sinh(),
            CatalogWeight::PowerQ { c, .. } => 0.5 * c * x,
        }
    }

    /// A point where w has a kink, if any; quadrature splits there.
    pub fn kink(&self) -> Option<f64> {
        match self {
            CatalogWeight::AbsX | CatalogWeight::ExpNegAbsX => Some(0.0),
            _ => None,
        }
    }
}

/// Cumulative-integral table with exact endpoint slopes.
///
/// Knot values come from per-cell adaptive quadrature of the density, knot
/// slopes are the density itself, and evaluation is the classic two-point
/// cubic Hermite. The interpolation error per cell is O(h^4 max|w'''|); the
/// default grid documented in [`ReweightedWeight`] keeps the budget below
/// 1e-9 for the catalog-times-catalog compositions exercised here.
#[derive(Debug, Clone)]
pub struct HermiteTable {
    lo: f64,
    step: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl HermiteTable {
    /// Tabulate an antiderivative of `density` on `[lo, hi]` with `cells`
    /// uniform cells, anchored to 0 at `lo`.
    pub fn build<F: Fn(f64) -> f64>(density: F, lo: f64, hi: f64, cells: usize, tol: f64) -> Self {
        assert!(hi > lo && cells >= 1);
        let step = (hi - lo) / cells as f64;
        let mut values = Vec::with_capacity(cells + 1);
        let mut slopes = Vec::with_capacity(cells + 1);
        let mut acc = 0.0;
        values.push(0.0);
        slopes.push(density(lo));
        for k in 1..=cells {
            let a = lo + (k - 1) as f64 * step;
            let b = lo + k as f64 * step;
            acc += quad::integrate(&density, a, b, tol);
            values.push(acc);
            slopes.push(density(b));
        }
        HermiteTable { lo, step, values, slopes }
    }

    pub fn range(&self) -> (f64, f64) {
        (self.lo, self.lo + self.step * (self.values.len() - 1) as f64)
    }

    /// Evaluate the tabulated antiderivative. `x` must lie inside the range.
    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.range();
        debug_assert!(x >= lo && x <= hi);
        let t = ((x - lo) / self.step).floor();
        let k = (t as usize).min(self.values.len() - 2);
        let x0 = lo + k as f64 * self.step;
        let s = (x - x0) / self.step;
        let h = self.step;
        let (v0, v1) = (self.values[k], self.values[k + 1]);
        let (m0, m1) = (self.slopes[k] * h, self.slopes[k + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        // Hermite basis.
        (2.0 * s3 - 3.0 * s2 + 1.0) * v0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * v1
            + (s3 - s2) * m1
    }
}

/// A base weight multiplied by a positive factor, as produced by `reweight`.
#[derive(Debug, Clone)]
pub struct ReweightedWeight {
    pub base: Box<Weight>,
    pub factor: FieldFunction,
    table: HermiteTable,
    table_tol: f64,
}

/// Grid half-width for reweighted antiderivative tables.
const REWEIGHT_TABLE_HALF_WIDTH: f64 = 24.0;
/// Grid step; 0.005 keeps the Hermite error near 1e-12 relative for
/// exponential-scale weights.
const REWEIGHT_TABLE_STEP: f64 = 0.005;

impl ReweightedWeight {
    fn build(base: Weight, factor: FieldFunction, domain: (f64, f64)) -> Result<Self> {
        let lo = domain.0.max(-REWEIGHT_TABLE_HALF_WIDTH);
        let hi = domain.1.min(REWEIGHT_TABLE_HALF_WIDTH);
        if !(hi > lo) {
            return Err(Error::InvalidInput(
                "reweight table range is empty; domain lies outside the tabulation window".into(),
            ));
        }
        // Sample the factor for positivity before committing to the table.
        let probe = 1024;
        for i in 0..=probe {
            let x = lo + (hi - lo) * i as f64 / probe as f64;
            let h = factor.eval_coord(x)?;
            if !(h > 0.0) || !h.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "reweight factor must be positive and finite on the domain; got {h} at x = {x}"
                )));
            }
        }
        let tol = 1e-13;
        let base_cl = base.clone();
        let factor_cl = factor.clone();
        let cells = ((hi - lo) / REWEIGHT_TABLE_STEP).ceil() as usize;
        let table = HermiteTable::build(
            move |t| base_cl.w(t) * factor_cl.eval_coord(t).unwrap_or(f64::NAN),
            lo,
            hi,
            cells.max(1),
            tol,
        );
        Ok(ReweightedWeight { base: Box::new(base), factor, table, table_tol: tol })
    }

    fn w(&self, x: f64) -> f64 {
        self.base.w(x) * self.factor.eval_coord(x).unwrap_or(f64::NAN)
    }

    fn antiderivative(&self, x: f64) -> f64 {
        let (lo, hi) = self.table.range();
        if x < lo {
            self.table.eval(lo) - quad::integrate(|t| self.w(t), x, lo, self.table_tol)
        } else if x > hi {
            self.table.eval(hi) + quad::integrate(|t| self.w(t), hi, x, self.table_tol)
        } else {
            self.table.eval(x)
        }
    }
}

/// Weight of an analytic space: a catalog entry or a reweighted composite.
#[derive(Debug, Clone)]
pub enum Weight {
    Catalog(CatalogWeight),
    Reweighted(ReweightedWeight),
}

impl Weight {
    pub fn reweight(&self, factor: FieldFunction, domain: (f64, f64)) -> Result<Weight> {
        Ok(Weight::Reweighted(ReweightedWeight::build(
            self.clone(),
            factor,
            domain,
        )?))
    }

    pub fn w(&self, x: f64) -> f64 {
        match self {
            Weight::Catalog(c) => c.w(x),
            Weight::Reweighted(r) => r.w(x),
        }
    }

    pub fn antiderivative(&self, x: f64) -> f64 {
        match self {
            Weight::Catalog(c) => c.antiderivative(x),
            Weight::Reweighted(r) => r.antiderivative(x),
        }
    }

    pub fn kink(&self) -> Option<f64> {
        match self {
            Weight::Catalog(c) => c.kink(),
            Weight::Reweighted(r) => r.base.kink(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_antiderivatives_differentiate_back() {
        let entries = [
            CatalogWeight::Lebesgue,
            CatalogWeight::AbsX,
            CatalogWeight::ExpNegX,
            CatalogWeight::ExpNegAbsX,
            CatalogWeight::TwoCosh,
            CatalogWeight::PowerQ { c: 3.0, q: 1.0 },
        ];
        let h = 1e-6;
        for w in &entries {
            for &x in &[-2.3, -0.7, 0.4, 1.9, 3.1] {
                let num = (w.antiderivative(x + h) - w.antiderivative(x - h)) / (2.0 * h);
                assert!(
                    (num - w.w(x)).abs() < 1e-6 * (1.0 + w.w(x).abs()),
                    "{w:?} at {x}: W' = {num}, w = {}",
                    w.w(x)
                );
                assert!(w.w(x) >= 0.0);
            }
        }
    }

    #[test]
    fn antiderivatives_are_nondecreasing() {
        let w = CatalogWeight::AbsX;
        let mut prev = w.antiderivative(-5.0);
        let mut x = -5.0;
        while x < 5.0 {
            x += 0.05;
            let v = w.antiderivative(x);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn power_q_rejects_nonunit_exponent() {
        assert!(CatalogWeight::PowerQ { c: 2.0, q: 2.0 }.validate().is_err());
        assert!(CatalogWeight::PowerQ { c: 2.0, q: 1.0 }.validate().is_ok());
    }

    #[test]
    fn hermite_table_reproduces_exponential_antiderivative() {
        let table = HermiteTable::build(|t: f64| t.exp(), -2.0, 2.0, 800, 1e-13);
        for &x in &[-2.0, -1.3, -0.2, 0.0, 0.7, 1.999] {
            let want = x.exp() - (-2f64).exp();
            let got = table.eval(x);
            assert!((got - want).abs() < 1e-10, "x={x}: got {got}, want {want}");
        }
    }
}
