//! Univariate and bivariate polynomials over a finite field context.
//!
//! `UniPoly` keeps coefficients ascending with no trailing zeros, so the zero
//! polynomial is the empty vector and `degree()` reports `None` for it; all
//! degree comparisons go through `Option<usize>`, whose derived order places
//! the sentinel below every finite degree.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::field::{Ctx, FieldCtx, FieldElement};
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    ctx: Ctx,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn zero(ctx: &Ctx) -> Self {
        UniPoly {
            ctx: ctx.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        UniPoly::constant(FieldCtx::one(ctx))
    }

    pub fn constant(c: FieldElement) -> Self {
        let ctx = c.ctx().clone();
        let coeffs = if c.is_zero() { vec![] } else { vec![c] };
        UniPoly { ctx, coeffs }
    }

    pub fn x(ctx: &Ctx) -> Self {
        UniPoly {
            ctx: ctx.clone(),
            coeffs: vec![FieldCtx::zero(ctx), FieldCtx::one(ctx)],
        }
    }

    pub fn from_coeffs(ctx: &Ctx, coeffs: Vec<FieldElement>) -> Self {
        let mut p = UniPoly {
            ctx: ctx.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    /// c * x^deg
    pub fn monomial(c: FieldElement, deg: usize) -> Self {
        let ctx = c.ctx().clone();
        if c.is_zero() {
            return UniPoly::zero(&ctx);
        }
        let mut coeffs = vec![FieldCtx::zero(&ctx); deg + 1];
        coeffs[deg] = c;
        UniPoly { ctx, coeffs }
    }

    /// Monic product of (x - r) over the given roots.
    pub fn from_roots(ctx: &Ctx, roots: &[FieldElement]) -> Self {
        let mut acc = UniPoly::one(ctx);
        for r in roots {
            let lin = UniPoly::from_coeffs(r.ctx(), vec![-r, FieldCtx::one(r.ctx())]);
            acc = &acc * &lin;
        }
        acc
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        if let Some(c) = self.coeffs.iter().find(|c| c.ctx().degree() > self.ctx.degree()) {
            self.ctx = c.ctx().clone();
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldCtx::zero(&self.ctx))
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> UniPoly {
        let coeffs = self.coeffs.iter().map(|c| c * s).collect();
        UniPoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldCtx::zero(x.ctx());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.ctx);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let scalar = FieldCtx::constant(&self.ctx, (i as u64) % self.ctx.characteristic());
                c * &scalar
            })
            .collect();
        UniPoly::from_coeffs(&self.ctx, coeffs)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divmod(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        if self.degree() < div.degree() {
            return (UniPoly::zero(&self.ctx), self.clone());
        }
        let lead_inv = div.leading().unwrap().inv();
        let mut rem = self.clone();
        let mut q = vec![FieldCtx::zero(&self.ctx); self.coeffs.len() - dd];
        while rem.degree() >= div.degree() && !rem.is_zero() {
            let dr = rem.degree().unwrap();
            let c = rem.leading().unwrap() * &lead_inv;
            let shift = dr - dd;
            q[shift] = c.clone();
            for i in 0..=dd {
                let t = &rem.coeffs[shift + i] - &(&c * &div.coeffs[i]);
                rem.coeffs[shift + i] = t;
            }
            rem.normalize();
        }
        (UniPoly::from_coeffs(&self.ctx, q), rem)
    }

    /// Division known to be exact; `InexactDivision` otherwise.
    pub fn exact_div(&self, div: &UniPoly, stage: &'static str) -> Result<UniPoly> {
        let (q, r) = self.divmod(div);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision { stage })
        }
    }

    pub fn rem(&self, div: &UniPoly) -> UniPoly {
        self.divmod(div).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) monic with s*self + t*other = g.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let ctx = &self.ctx;
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = UniPoly::one(ctx);
        let mut s1 = UniPoly::zero(ctx);
        let mut t0 = UniPoly::zero(ctx);
        let mut t1 = UniPoly::one(ctx);
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if let Some(l) = r0.leading() {
            let li = l.inv();
            return (r0.scale(&li), s0.scale(&li), t0.scale(&li));
        }
        (r0, s0, t0)
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut acc = UniPoly::one(&self.ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = self.gcd(&self.derivative());
        g.degree() == Some(0)
    }

    /// Reverse of coefficients (the reciprocal polynomial x^deg * p(1/x)).
    pub fn reciprocal(&self) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        UniPoly::from_coeffs(&self.ctx, coeffs)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "{c}*x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! unipoly_addsub {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for &UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                let n = self.coeffs.len().max(rhs.coeffs.len());
                let ctx = if rhs.ctx.degree() > self.ctx.degree() {
                    &rhs.ctx
                } else {
                    &self.ctx
                };
                let mut coeffs = Vec::with_capacity(n);
                for i in 0..n {
                    let a = self.coeff(i);
                    let b = rhs.coeff(i);
                    coeffs.push(&a $op &b);
                }
                UniPoly::from_coeffs(ctx, coeffs)
            }
        }
        impl std::ops::$trait for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

unipoly_addsub!(Add, add, +);
unipoly_addsub!(Sub, sub, -);

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.ctx);
        }
        let ctx = if rhs.ctx.degree() > self.ctx.degree() {
            &rhs.ctx
        } else {
            &self.ctx
        };
        let mut coeffs = vec![FieldCtx::zero(ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(ctx, coeffs)
    }
}

impl std::ops::Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(&self.ctx, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

// ---------------------------------------------------------------------------
// BiPoly
// ---------------------------------------------------------------------------

/// Sparse bivariate polynomial; keys are (x-exponent, y-exponent).
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    ctx: Ctx,
    terms: BTreeMap<(u32, u32), FieldElement>,
}

impl BiPoly {
    pub fn zero(ctx: &Ctx) -> Self {
        BiPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &FieldElement)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        if c.ctx().degree() > self.ctx.degree() {
            self.ctx = c.ctx().clone();
        }
        match self.terms.remove(&(i, j)) {
            None => {
                self.terms.insert((i, j), c);
            }
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert((i, j), s);
                }
            }
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElement {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| FieldCtx::zero(&self.ctx))
    }

    /// p(x) viewed as a bivariate polynomial.
    pub fn from_unipoly_x(p: &UniPoly) -> Self {
        let mut b = BiPoly::zero(p.ctx());
        for (i, c) in p.coeffs().iter().enumerate() {
            b.add_term(i as u32, 0, c.clone());
        }
        b
    }

    /// p(y) viewed as a bivariate polynomial.
    pub fn from_unipoly_y(p: &UniPoly) -> Self {
        let mut b = BiPoly::zero(p.ctx());
        for (j, c) in p.coeffs().iter().enumerate() {
            b.add_term(0, j as u32, c.clone());
        }
        b
    }

    /// y^n - f(x), the affine curve equation.
    pub fn curve_equation(n: u32, f: &UniPoly) -> Self {
        let ctx = f.ctx();
        let mut b = BiPoly::zero(ctx);
        b.add_term(0, n, FieldCtx::one(ctx));
        for (i, c) in f.coeffs().iter().enumerate() {
            b.add_term(i as u32, 0, -c);
        }
        b
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut acc = FieldCtx::zero(x.ctx());
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&(c * &x.pow(i as u128)) * &y.pow(j as u128));
        }
        acc
    }

    /// Substitutes a value for y, leaving a polynomial in x.
    pub fn eval_y(&self, y: &FieldElement) -> UniPoly {
        let mut coeffs: Vec<FieldElement> = vec![];
        for (&(i, j), c) in &self.terms {
            let v = c * &y.pow(j as u128);
            while coeffs.len() <= i as usize {
                coeffs.push(FieldCtx::zero(y.ctx()));
            }
            coeffs[i as usize] = &coeffs[i as usize] + &v;
        }
        UniPoly::from_coeffs(y.ctx(), coeffs)
    }

    /// Substitutes a value for x, leaving a polynomial in y.
    pub fn eval_x(&self, x: &FieldElement) -> UniPoly {
        let mut coeffs: Vec<FieldElement> = vec![];
        for (&(i, j), c) in &self.terms {
            let v = c * &x.pow(i as u128);
            while coeffs.len() <= j as usize {
                coeffs.push(FieldCtx::zero(x.ctx()));
            }
            coeffs[j as usize] = &coeffs[j as usize] + &v;
        }
        UniPoly::from_coeffs(x.ctx(), coeffs)
    }

    pub fn partial_x(&self) -> BiPoly {
        let p = self.ctx.characteristic();
        let mut out = BiPoly::zero(&self.ctx);
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                let s = FieldCtx::constant(&self.ctx, i as u64 % p);
                out.add_term(i - 1, j, c * &s);
            }
        }
        out
    }

    pub fn partial_y(&self) -> BiPoly {
        let p = self.ctx.characteristic();
        let mut out = BiPoly::zero(&self.ctx);
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                let s = FieldCtx::constant(&self.ctx, j as u64 % p);
                out.add_term(i, j - 1, c * &s);
            }
        }
        out
    }

    /// Coefficients as polynomials in x, indexed by the y-exponent.
    pub fn coeffs_in_y(&self) -> Vec<UniPoly> {
        let dy = match self.deg_y() {
            None => return vec![],
            Some(d) => d,
        };
        let mut out = vec![UniPoly::zero(&self.ctx); dy as usize + 1];
        for (&(i, j), c) in &self.terms {
            out[j as usize] = &out[j as usize] + &UniPoly::monomial(c.clone(), i as usize);
        }
        out
    }

    /// Coefficients as polynomials in y, indexed by the x-exponent.
    pub fn coeffs_in_x(&self) -> Vec<UniPoly> {
        let dx = match self.deg_x() {
            None => return vec![],
            Some(d) => d,
        };
        let mut out = vec![UniPoly::zero(&self.ctx); dx as usize + 1];
        for (&(i, j), c) in &self.terms {
            out[i as usize] = &out[i as usize] + &UniPoly::monomial(c.clone(), j as usize);
        }
        out
    }
}

impl std::ops::Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl std::ops::Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero(&self.ctx);
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() && (i, j) != (0, 0) {
            } else {
                write!(f, "{c}")?;
                if (i, j) != (0, 0) {
                    write!(f, "*")?;
                }
            }
            match (i, j) {
                (0, 0) => {}
                (1, 0) => write!(f, "x")?,
                (_, 0) => write!(f, "x^{i}")?,
                (0, 1) => write!(f, "y")?,
                (0, _) => write!(f, "y^{j}")?,
                (1, 1) => write!(f, "x*y")?,
                (1, _) => write!(f, "x*y^{j}")?,
                (_, 1) => write!(f, "x^{i}*y")?,
                (_, _) => write!(f, "x^{i}*y^{j}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// resultants
// ---------------------------------------------------------------------------

/// Determinant of a square matrix of polynomials via fraction-free (Bareiss)
/// elimination. Exact over any integral domain of coefficients.
pub fn poly_matrix_det(mut m: Vec<Vec<UniPoly>>, ctx: &Ctx) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one(ctx);
    }
    let mut sign_neg = false;
    let mut prev = UniPoly::one(ctx);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_neg = !sign_neg;
                }
                None => return UniPoly::zero(ctx),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev, "bareiss")
                    .expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero(ctx);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        -&det
    } else {
        det
    }
}

/// Cofactor-expansion determinant, kept as an independent check of the
/// Bareiss route on small matrices.
pub fn poly_matrix_det_naive(m: &[Vec<UniPoly>], ctx: &Ctx) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one(ctx);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero(ctx);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<UniPoly>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &poly_matrix_det_naive(&minor, ctx);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Sylvester matrix of two polynomials given by their coefficient lists in
/// the eliminated variable (ascending), with entries in the kept variable.
fn sylvester_matrix(a: &[UniPoly], b: &[UniPoly], ctx: &Ctx) -> Vec<Vec<UniPoly>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![UniPoly::zero(ctx); size]; size];
    for row in 0..n {
        for (idx, c) in a.iter().rev().enumerate() {
            mat[row][row + idx] = c.clone();
        }
    }
    for row in 0..m {
        for (idx, c) in b.iter().rev().enumerate() {
            mat[n + row][row + idx] = c.clone();
        }
    }
    mat
}

fn resultant_from_coeff_lists(a: Vec<UniPoly>, b: Vec<UniPoly>, ctx: &Ctx) -> Result<UniPoly> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 {
        return Ok(a[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(b[0].pow(m as u32));
    }
    Ok(poly_matrix_det(sylvester_matrix(&a, &b, ctx), ctx))
}

fn trim_top(mut v: Vec<UniPoly>) -> Vec<UniPoly> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

/// Res_y(a, b): eliminates y, returns a polynomial in x.
///
/// Standard Sylvester convention: for monic-in-y `a`, this is the product of
/// `b` over the y-roots of `a`.
pub fn poly_resultant(a: &BiPoly, b: &BiPoly) -> Result<UniPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = if b.ctx().degree() > a.ctx().degree() {
        b.ctx()
    } else {
        a.ctx()
    };
    resultant_from_coeff_lists(trim_top(a.coeffs_in_y()), trim_top(b.coeffs_in_y()), ctx)
}

/// Res_x(a, b): eliminates x, returns a polynomial in y (as a `UniPoly`).
pub fn poly_resultant_x(a: &BiPoly, b: &BiPoly) -> Result<UniPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = if b.ctx().degree() > a.ctx().degree() {
        b.ctx()
    } else {
        a.ctx()
    };
    resultant_from_coeff_lists(trim_top(a.coeffs_in_x()), trim_top(b.coeffs_in_x()), ctx)
}

/// g_i(y) = Res_x(f_i(x), curve equation): for f_i the x-support of a point
/// set, the polynomial cutting out every y above those x's. Constant f_i
/// yields the empty product 1.
pub fn conjugate_y_poly(curve_eq: &BiPoly, fx: &UniPoly) -> Result<UniPoly> {
    if fx.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    poly_resultant_x(&BiPoly::from_unipoly_x(fx), curve_eq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::field_make;

    fn fp(p: u64) -> Ctx {
        field_make(p, 1).unwrap()
    }

    fn poly(ctx: &Ctx, cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(
            ctx,
            cs.iter().map(|&c| FieldCtx::constant_i64(ctx, c)).collect(),
        )
    }

    #[test]
    fn divmod_round_trips() {
        let ctx = fp(13);
        let a = poly(&ctx, &[3, 1, 4, 1, 5]);
        let b = poly(&ctx, &[2, 7, 1]);
        let (q, r) = a.divmod(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn zero_degree_sentinel_is_least() {
        let ctx = fp(7);
        let z = UniPoly::zero(&ctx);
        let c = UniPoly::one(&ctx);
        assert!(z.degree() < c.degree());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn gcd_and_xgcd() {
        let ctx = fp(11);
        let a = &poly(&ctx, &[1, 1]) * &poly(&ctx, &[3, 0, 1]);
        let b = &poly(&ctx, &[1, 1]) * &poly(&ctx, &[5, 1]);
        let g = a.gcd(&b);
        assert_eq!(g, poly(&ctx, &[1, 1]));
        let (g2, s, t) = a.xgcd(&b);
        assert_eq!(g2, g);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    // Res_y(y - c(x), g(x, y)) = g(x, c(x)): linear elimination.
    #[test]
    fn resultant_linear_elimination() {
        let ctx = fp(7);
        let c = poly(&ctx, &[2, 3, 1]); // c(x) = x^2 + 3x + 2
        let mut a = BiPoly::zero(&ctx); // y - c(x)
        a.add_term(0, 1, FieldCtx::one(&ctx));
        for (i, cc) in c.coeffs().iter().enumerate() {
            a.add_term(i as u32, 0, -cc);
        }
        // g(x, y) = y^2 + x*y + 5
        let mut g = BiPoly::zero(&ctx);
        g.add_term(0, 2, FieldCtx::one(&ctx));
        g.add_term(1, 1, FieldCtx::one(&ctx));
        g.add_term(0, 0, FieldCtx::constant(&ctx, 5));
        let res = poly_resultant(&a, &g).unwrap();
        // substitution oracle
        let expected = {
            let c2 = &c * &c;
            let xc = &UniPoly::x(&ctx) * &c;
            &(&c2 + &xc) + &poly(&ctx, &[5])
        };
        assert_eq!(res, expected);
    }

    // Res_y(y^2 - f, y - v) = v^2 - f: substitution identity.
    #[test]
    fn resultant_substitution_identity() {
        let ctx = fp(11);
        let f = poly(&ctx, &[1, 3, 0, 0, 0, 1]);
        let v = poly(&ctx, &[4, 2, 9]);
        let a = BiPoly::curve_equation(2, &f);
        let mut b = BiPoly::zero(&ctx);
        b.add_term(0, 1, FieldCtx::one(&ctx));
        for (i, c) in v.coeffs().iter().enumerate() {
            b.add_term(i as u32, 0, -c);
        }
        let res = poly_resultant(&a, &b).unwrap();
        let expected = &(&v * &v) - &f;
        assert_eq!(res, expected);
    }

    // Res_y(y^3 - (x+1), y - x) over F_5. The substitution oracle gives the
    // value up to the sign (-1)^(deg_y a * deg_y b) fixed by the Sylvester
    // convention.
    #[test]
    fn resultant_cubic_example() {
        let ctx = fp(5);
        let a = BiPoly::curve_equation(3, &poly(&ctx, &[1, 1]));
        let mut b = BiPoly::zero(&ctx);
        b.add_term(0, 1, FieldCtx::one(&ctx));
        b.add_term(1, 0, FieldCtx::constant_i64(&ctx, -1));
        let res = poly_resultant(&a, &b).unwrap();
        // oracle: a(y := x) = x^3 - x - 1, times (-1)^(3*1)
        let substituted = poly(&ctx, &[-1, -1, 0, 1]);
        assert_eq!(res, -&substituted);
        // and the oracle route through Res(b, a) agrees with x^3 - x - 1
        let res_ba = poly_resultant(&b, &a).unwrap();
        assert_eq!(res_ba, substituted);
    }

    #[test]
    fn resultant_rejects_zero() {
        let ctx = fp(5);
        let z = BiPoly::zero(&ctx);
        let one = BiPoly::from_unipoly_x(&UniPoly::one(&ctx));
        assert_eq!(poly_resultant(&z, &one).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let ctx = fp(13);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let n = rng.gen_range(1..=4);
            let m: Vec<Vec<UniPoly>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let d = rng.gen_range(0..3);
                            UniPoly::from_coeffs(
                                &ctx,
                                (0..=d)
                                    .map(|_| FieldCtx::constant(&ctx, rng.gen_range(0..13)))
                                    .collect(),
                            )
                        })
                        .collect()
                })
                .collect();
            assert_eq!(
                poly_matrix_det(m.clone(), &ctx),
                poly_matrix_det_naive(&m, &ctx)
            );
        }
    }

    // conjugate polynomial: curve y^2 = x^3 + 1 over F_7, fx = x - 2
    #[test]
    fn conjugate_poly_single_point() {
        let ctx = fp(7);
        let curve = BiPoly::curve_equation(2, &poly(&ctx, &[1, 0, 0, 1]));
        let fx = poly(&ctx, &[-2, 1]);
        let g = conjugate_y_poly(&curve, &fx).unwrap();
        // y^2 - (2^3 + 1) = y^2 - 2 mod 7
        assert_eq!(g, poly(&ctx, &[-2, 0, 1]));
    }

    #[test]
    fn conjugate_poly_constant_support() {
        let ctx = fp(7);
        let curve = BiPoly::curve_equation(2, &poly(&ctx, &[1, 0, 0, 1]));
        let g = conjugate_y_poly(&curve, &UniPoly::one(&ctx)).unwrap();
        assert_eq!(g, UniPoly::one(&ctx));
    }

    // degree law: deg g_i = n * deg fx, on random instances
    #[test]
    fn conjugate_poly_degree_law() {
        use rand::{Rng, SeedableRng};
        let ctx = fp(13);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let f = poly(&ctx, &[1, 1, 0, 0, 1]); // quartic
        let curve = BiPoly::curve_equation(3, &f);
        for _ in 0..20 {
            let d = rng.gen_range(1..=3usize);
            let mut cs: Vec<FieldElement> = (0..d)
                .map(|_| FieldCtx::constant(&ctx, rng.gen_range(0..13)))
                .collect();
            cs.push(FieldCtx::one(&ctx));
            let fx = UniPoly::from_coeffs(&ctx, cs);
            let g = conjugate_y_poly(&curve, &fx).unwrap();
            assert_eq!(g.degree(), Some(3 * d));
        }
    }
}
