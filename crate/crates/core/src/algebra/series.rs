//! Truncated power series F_q[[t]]/(t^prec), used for tangency conditions at
//! repeated points and for expanding a curve branch around a point.

use crate::algebra::field::{Ctx, FieldCtx, FieldElement};
use crate::algebra::poly::{BiPoly, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    ctx: Ctx,
    coeffs: Vec<FieldElement>, // length = precision
}

impl TruncSeries {
    pub fn zero(ctx: &Ctx, prec: usize) -> Self {
        TruncSeries {
            ctx: ctx.clone(),
            coeffs: vec![FieldCtx::zero(ctx); prec],
        }
    }

    pub fn constant(c: &FieldElement, prec: usize) -> Self {
        let mut s = TruncSeries::zero(c.ctx(), prec);
        s.coeffs[0] = c.clone();
        s
    }

    /// c + t
    pub fn var_plus(c: &FieldElement, prec: usize) -> Self {
        let mut s = TruncSeries::constant(c, prec);
        if prec > 1 {
            s.coeffs[1] = FieldCtx::one(c.ctx());
        }
        s
    }

    /// t^k (zero when k exceeds the precision)
    pub fn monomial(ctx: &Ctx, k: usize, prec: usize) -> Self {
        let mut s = TruncSeries::zero(ctx, prec);
        if k < prec {
            s.coeffs[k] = FieldCtx::one(ctx);
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// t-adic valuation, None when zero to working precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let prec = self.prec().min(other.prec());
        let mut out = TruncSeries::zero(&self.ctx, prec);
        for i in 0..prec {
            for j in 0..prec - i {
                if self.coeffs[i].is_zero() || other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        out
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let prec = self.prec().min(other.prec());
        let mut out = TruncSeries::zero(&self.ctx, prec);
        for i in 0..prec {
            out.coeffs[i] = &self.coeffs[i] + &other.coeffs[i];
        }
        out
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        let prec = self.prec().min(other.prec());
        let mut out = TruncSeries::zero(&self.ctx, prec);
        for i in 0..prec {
            out.coeffs[i] = &self.coeffs[i] - &other.coeffs[i];
        }
        out
    }

    pub fn scale(&self, s: &FieldElement) -> TruncSeries {
        TruncSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> TruncSeries {
        let mut acc = TruncSeries::constant(&FieldCtx::one(&self.ctx), self.prec());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inv(&self) -> TruncSeries {
        let prec = self.prec();
        let a0_inv = self.coeffs[0].inv();
        let mut out = TruncSeries::zero(&self.ctx, prec);
        out.coeffs[0] = a0_inv.clone();
        for k in 1..prec {
            let mut acc = FieldCtx::zero(&self.ctx);
            for i in 1..=k {
                acc = &acc + &(&self.coeffs[i] * &out.coeffs[k - i]);
            }
            out.coeffs[k] = -&(&a0_inv * &acc);
        }
        out
    }
}

/// Evaluates a univariate polynomial on a series argument.
pub fn eval_unipoly_series(p: &UniPoly, s: &TruncSeries) -> TruncSeries {
    let mut acc = TruncSeries::zero(s.ctx_ref(), s.prec());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(s).add(&TruncSeries::constant(c, s.prec()));
    }
    acc
}

/// Evaluates a bivariate polynomial on series arguments.
pub fn eval_bipoly_series(b: &BiPoly, xs: &TruncSeries, ys: &TruncSeries) -> TruncSeries {
    let prec = xs.prec().min(ys.prec());
    let mut acc = TruncSeries::zero(xs.ctx_ref(), prec);
    // cache powers
    let dx = b.deg_x().unwrap_or(0) as usize;
    let dy = b.deg_y().unwrap_or(0) as usize;
    let one = TruncSeries::constant(&FieldCtx::one(xs.ctx_ref()), prec);
    let mut xp = Vec::with_capacity(dx + 1);
    xp.push(one.clone());
    for i in 1..=dx {
        xp.push(xp[i - 1].mul(xs));
    }
    let mut yp = Vec::with_capacity(dy + 1);
    yp.push(one);
    for j in 1..=dy {
        yp.push(yp[j - 1].mul(ys));
    }
    for (&(i, j), c) in b.terms() {
        acc = acc.add(&xp[i as usize].mul(&yp[j as usize]).scale(c));
    }
    acc
}

impl TruncSeries {
    fn ctx_ref(&self) -> &Ctx {
        &self.ctx
    }
}

/// Solves y(t)^n = rhs(t) with given y(0); requires n * y(0)^(n-1) invertible.
pub fn nth_root_series(rhs: &TruncSeries, n: u32, y0: &FieldElement) -> TruncSeries {
    let prec = rhs.prec();
    let ctx = y0.ctx();
    debug_assert_eq!(&y0.pow(n as u128), rhs.coeff(0));
    let n_elt = FieldCtx::constant(ctx, n as u64 % ctx.characteristic());
    debug_assert!(!n_elt.is_zero() && !y0.is_zero());
    let mut y = TruncSeries::constant(y0, prec);
    let steps = usize::BITS - prec.leading_zeros() + 1;
    for _ in 0..steps {
        // y <- y - (y^n - rhs) / (n y^(n-1))
        let yn1 = y.pow(n - 1);
        let f = y.mul(&yn1).sub(rhs);
        let df = yn1.scale(&n_elt);
        y = y.sub(&f.mul(&df.inv()));
    }
    debug_assert_eq!(y.pow(n), *rhs);
    y
}

/// Solves f(x(t)) = target(t) with given x(0); requires f'(x(0)) invertible.
pub fn inverse_image_series(
    f: &UniPoly,
    target: &TruncSeries,
    x0: &FieldElement,
) -> TruncSeries {
    let prec = target.prec();
    debug_assert_eq!(&f.eval(x0), target.coeff(0));
    let df = f.derivative();
    debug_assert!(!df.eval(x0).is_zero());
    let mut x = TruncSeries::constant(x0, prec);
    let steps = usize::BITS - prec.leading_zeros() + 1;
    for _ in 0..steps {
        let val = eval_unipoly_series(f, &x).sub(target);
        let der = eval_unipoly_series(&df, &x);
        x = x.sub(&val.mul(&der.inv()));
    }
    debug_assert_eq!(eval_unipoly_series(f, &x), *target);
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::field_make;

    #[test]
    fn series_inverse() {
        let ctx = field_make(11, 1).unwrap();
        let mut s = TruncSeries::constant(&FieldCtx::constant(&ctx, 3), 6);
        s = s.add(&TruncSeries::var_plus(&FieldCtx::zero(&ctx), 6)); // 3 + t
        let inv = s.inv();
        let prod = s.mul(&inv);
        assert_eq!(prod, TruncSeries::constant(&FieldCtx::one(&ctx), 6));
    }

    #[test]
    fn branch_expansion_satisfies_curve() {
        // y^2 = x^5 + 3x + 1 over F_11 at the point (2, y) with y^2 = f(2)
        let ctx = field_make(11, 1).unwrap();
        let f = UniPoly::from_coeffs(
            &ctx,
            [1i64, 3, 0, 0, 0, 1]
                .iter()
                .map(|&c| FieldCtx::constant_i64(&ctx, c))
                .collect(),
        );
        let x0 = FieldCtx::constant(&ctx, 1);
        let f_at = f.eval(&x0); // f(1) = 5 = 4^2 mod 11
        let y0 = (0..11u64)
            .map(|v| FieldCtx::constant(&ctx, v))
            .find(|y| y * y == f_at)
            .expect("f(2) must be a square for this test");
        let xs = TruncSeries::var_plus(&x0, 5);
        let rhs = eval_unipoly_series(&f, &xs);
        let ys = nth_root_series(&rhs, 2, &y0);
        assert_eq!(ys.pow(2), rhs);
        assert_eq!(ys.coeff(0), &y0);
        // first-order coefficient is f'(x0) / (2 y0)
        let expect = &f.derivative().eval(&x0)
            / &(&FieldCtx::constant(&ctx, 2) * &y0);
        assert_eq!(ys.coeff(1), &expect);
    }

    #[test]
    fn ramified_branch_expansion() {
        // at a root e of f, the branch is parametrized by t = y: f(x(t)) = t^2
        let ctx = field_make(13, 1).unwrap();
        // f = x(x-1)(x-2) has root 0 with f'(0) = 2 != 0
        let f = {
            let lin = |c: i64| {
                UniPoly::from_coeffs(
                    &ctx,
                    vec![FieldCtx::constant_i64(&ctx, -c), FieldCtx::one(&ctx)],
                )
            };
            &(&lin(0) * &lin(1)) * &lin(2)
        };
        let x0 = FieldCtx::zero(&ctx);
        let prec = 6;
        let target = TruncSeries::monomial(&ctx, 2, prec);
        let xs = inverse_image_series(&f, &target, &x0);
        assert_eq!(eval_unipoly_series(&f, &xs), target);
        assert!(xs.coeff(1).is_zero()); // x - x0 vanishes to order 2 in t
        assert!(!xs.coeff(2).is_zero());
    }
}
