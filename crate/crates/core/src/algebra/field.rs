//! Prime fields `F_p` and their extensions `F_{p^k}`.
//!
//! Extensions are always represented over the prime field by a canonical
//! modulus: the lexicographically least monic irreducible polynomial of the
//! requested degree (coefficient vectors compared as base-`p` integers).
//! Two contexts with the same `(p, k)` are therefore interchangeable, which
//! makes field elements comparable across independently constructed towers.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Shared handle to a field context. All elements hold one.
pub type Ctx = Arc<FieldCtx>;

// ---------------------------------------------------------------------------
// scalar arithmetic mod p
// ---------------------------------------------------------------------------

#[inline]
pub(crate) fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

#[inline]
pub(crate) fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inversion of zero mod {p}");
    powm(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// raw dense polynomials over F_p (modulus bootstrap only)
// ---------------------------------------------------------------------------

mod rawpoly {
    use super::{invm, mulm, subm};

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = super::addm(out[i + j], mulm(ai, bj, p), p);
            }
        }
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = invm(m[dm], p);
        while r.len() > dm {
            let c = mulm(*r.last().unwrap(), lead_inv, p);
            let shift = r.len() - 1 - dm;
            for i in 0..=dm {
                r[shift + i] = subm(r[shift + i], mulm(c, m[i], p), p);
            }
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        if let Some(&l) = a.last() {
            let li = invm(l, p);
            for c in a.iter_mut() {
                *c = mulm(*c, li, p);
            }
        }
        a
    }

    /// x^(p^i) mod m for i = 1..bound, yielding each step.
    pub fn frobenius_powers(m: &[u64], p: u64, bound: u32) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut h = vec![0, 1]; // x
        for _ in 0..bound {
            h = powmod(&h, p, m, p);
            out.push(h.clone());
        }
        out
    }

    pub fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Irreducibility over F_p: no factor of degree <= k/2.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let k = (m.len() - 1) as u32;
        if k == 1 {
            return true;
        }
        let mut x_sub = vec![0, 1];
        trim(&mut x_sub);
        for h in frobenius_powers(m, p, k / 2) {
            // gcd(h - x, m)
            let mut diff = h;
            while diff.len() < 2 {
                diff.push(0);
            }
            diff[1] = subm(diff[1], 1, p);
            trim(&mut diff);
            let g = gcd(&diff, m, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// FieldCtx
// ---------------------------------------------------------------------------

/// A finite field `F_{p^k}`, `k = 1` meaning the prime field itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u64,
    k: u32,
    /// Monic irreducible modulus of degree k over F_p, ascending coefficients
    /// (length k+1). Empty exactly when k = 1.
    modulus: Vec<u64>,
}

impl FieldCtx {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Ctx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Arc::new(FieldCtx {
            p,
            k: 1,
            modulus: vec![],
        }))
    }

    /// F_{p^k} with the canonical modulus: the first monic irreducible of
    /// degree k when coefficient vectors are enumerated as base-p integers.
    pub fn extension(p: u64, k: u32) -> Result<Ctx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let total = (p as u128).checked_pow(k).filter(|&t| t <= 1u128 << 40);
        let mut idx: u128 = 0;
        loop {
            if let Some(t) = total {
                if idx >= t {
                    return Err(Error::NoIrreducibleFound(k));
                }
            }
            let mut m = Vec::with_capacity(k as usize + 1);
            let mut rest = idx;
            for _ in 0..k {
                m.push((rest % p as u128) as u64);
                rest /= p as u128;
            }
            m.push(1);
            if rawpoly::is_irreducible(&m, p) {
                return Ok(Arc::new(FieldCtx { p, k, modulus: m }));
            }
            idx += 1;
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    /// p^k, when it fits a u128.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.k)
    }

    pub fn zero(ctx: &Ctx) -> FieldElement {
        FieldElement {
            ctx: ctx.clone(),
            rep: vec![0; ctx.k as usize],
        }
    }

    pub fn one(ctx: &Ctx) -> FieldElement {
        FieldCtx::constant(ctx, 1)
    }

    /// The constant c mod p, lifted into the field.
    pub fn constant(ctx: &Ctx, c: u64) -> FieldElement {
        let mut rep = vec![0; ctx.k as usize];
        rep[0] = c % ctx.p;
        FieldElement {
            ctx: ctx.clone(),
            rep,
        }
    }

    pub fn constant_i64(ctx: &Ctx, c: i64) -> FieldElement {
        let p = ctx.p as i64;
        FieldCtx::constant(ctx, c.rem_euclid(p) as u64)
    }

    /// Element from an F_p coefficient vector (length <= k, ascending).
    pub fn from_rep(ctx: &Ctx, rep: &[u64]) -> Result<FieldElement> {
        if rep.len() > ctx.k as usize {
            return Err(Error::FieldMismatch);
        }
        let mut full = vec![0; ctx.k as usize];
        for (i, &c) in rep.iter().enumerate() {
            full[i] = c % ctx.p;
        }
        Ok(FieldElement {
            ctx: ctx.clone(),
            rep: full,
        })
    }

    /// The residue-class generator alpha of F_{p^k} over F_p (k > 1).
    pub fn generator(ctx: &Ctx) -> FieldElement {
        assert!(ctx.k > 1, "prime field has no extension generator");
        let mut rep = vec![0; ctx.k as usize];
        rep[1] = 1;
        FieldElement {
            ctx: ctx.clone(),
            rep,
        }
    }

    /// Iterator over every element, in base-p counting order.
    pub fn all_elements(ctx: &Ctx) -> impl Iterator<Item = FieldElement> + '_ {
        let q = ctx.order().expect("field too large to enumerate");
        let ctx = ctx.clone();
        (0..q).map(move |idx| FieldCtx::element_by_index(&ctx, idx))
    }

    pub fn element_by_index(ctx: &Ctx, mut idx: u128) -> FieldElement {
        let mut rep = vec![0; ctx.k as usize];
        for r in rep.iter_mut() {
            *r = (idx % ctx.p as u128) as u64;
            idx /= ctx.p as u128;
        }
        FieldElement {
            ctx: ctx.clone(),
            rep,
        }
    }
}

/// Canonical field construction: prime field for k = 1, extension otherwise.
pub fn field_make(p: u64, k: u32) -> Result<Ctx> {
    FieldCtx::extension(p, k)
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

/// An element of `F_{p^k}`, stored as its reduced coefficient vector over F_p.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Ctx,
    rep: Vec<u64>,
}

impl FieldElement {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rep(&self) -> &[u64] {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.rep[0] == 1 && self.rep[1..].iter().all(|&c| c == 0)
    }

    /// Brings two operands into a common context. Prime-field elements lift
    /// automatically into an extension with the same characteristic; anything
    /// else mismatched is a programming error.
    fn align(a: &FieldElement, b: &FieldElement) -> (FieldElement, FieldElement) {
        if a.ctx == b.ctx {
            return (a.clone(), b.clone());
        }
        assert_eq!(
            a.ctx.p, b.ctx.p,
            "field elements of different characteristic"
        );
        if a.ctx.k == 1 {
            let mut rep = vec![0; b.ctx.k as usize];
            rep[0] = a.rep[0];
            return (
                FieldElement {
                    ctx: b.ctx.clone(),
                    rep,
                },
                b.clone(),
            );
        }
        if b.ctx.k == 1 {
            let (bb, aa) = FieldElement::align(b, a);
            return (aa, bb);
        }
        panic!(
            "field elements of degrees {} and {} cannot be combined implicitly",
            a.ctx.k, b.ctx.k
        );
    }

    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inversion of zero");
        let p = self.ctx.p;
        if self.ctx.k == 1 {
            return FieldElement {
                ctx: self.ctx.clone(),
                rep: vec![invm(self.rep[0], p)],
            };
        }
        // extended Euclid between rep and the modulus
        let mut r0 = self.ctx.modulus.clone();
        let mut r1 = self.rep.clone();
        rawpoly::trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // divide r0 by r1
            let mut q: Vec<u64> = vec![0; r0.len().saturating_sub(r1.len()) + 1];
            let mut r = r0.clone();
            let lead_inv = invm(*r1.last().unwrap(), p);
            while r.len() >= r1.len() && !r.is_empty() {
                let c = mulm(*r.last().unwrap(), lead_inv, p);
                let shift = r.len() - r1.len();
                q[shift] = c;
                for i in 0..r1.len() {
                    r[shift + i] = subm(r[shift + i], mulm(c, r1[i], p), p);
                }
                rawpoly::trim(&mut r);
            }
            rawpoly::trim(&mut q);
            // (r0, r1) = (r1, r); (s0, s1) = (s1, s0 - q s1)
            let qs1 = rawpoly::mul(&q, &s1, p);
            let mut s2 = s0.clone();
            if s2.len() < qs1.len() {
                s2.resize(qs1.len(), 0);
            }
            for (i, &c) in qs1.iter().enumerate() {
                s2[i] = subm(s2[i], c, p);
            }
            rawpoly::trim(&mut s2);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd (a unit since modulus is irreducible and self != 0)
        debug_assert_eq!(r0.len(), 1);
        let u = invm(r0[0], p);
        let mut rep = vec![0; self.ctx.k as usize];
        for (i, &c) in s0.iter().enumerate() {
            rep[i] = mulm(c, u, p);
        }
        FieldElement {
            ctx: self.ctx.clone(),
            rep,
        }
    }

    pub fn pow(&self, mut e: u128) -> FieldElement {
        let mut acc = FieldCtx::one(&self.ctx);
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

    /// e-th power for a big-integer exponent.
    pub fn pow_big(&self, e: &num_bigint::BigUint) -> FieldElement {
        use num_bigint::BigUint;
        let mut acc = FieldCtx::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e.clone();
        let one = BigUint::from(1u8);
        while e > BigUint::default() {
            if (&e & &one) == one {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Frobenius x -> x^(p^times).
    pub fn frobenius(&self, times: u32) -> FieldElement {
        let mut out = self.clone();
        for _ in 0..times {
            out = out.pow(self.ctx.p as u128);
        }
        out
    }

    /// True iff the element lies in the subfield F_{p^s}. Requires s | k.
    pub fn in_subfield(&self, s: u32) -> bool {
        debug_assert!(self.ctx.k % s == 0);
        self.frobenius(s) == *self
    }

    /// For an element known to be a prime-field constant, its value.
    pub fn as_prime_value(&self) -> Option<u64> {
        if self.rep[1..].iter().all(|&c| c == 0) {
            Some(self.rep[0])
        } else {
            None
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx == other.ctx {
            return self.rep == other.rep;
        }
        if self.ctx.p != other.ctx.p {
            return false;
        }
        // A prime-field constant equals its lift.
        let (a, b) = FieldElement::align(self, other);
        a.rep == b.rep
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ctx.p, self.ctx.k, &self.rep).cmp(&(other.ctx.p, other.ctx.k, &other.rep))
    }
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.p.hash(state);
        self.rep.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.k == 1 {
            write!(f, "{}", self.rep[0])
        } else {
            write!(
                f,
                "[{}]",
                self.rep
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident, $p:ident| $body:expr) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                let (x, y) = FieldElement::align(self, rhs);
                let $p = x.ctx.p;
                let rep = x
                    .rep
                    .iter()
                    .zip(y.rep.iter())
                    .map(|(&$a, &$b)| $body)
                    .collect();
                FieldElement { ctx: x.ctx, rep }
            }
        }
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b, p| addm(a, b, p));
binop!(Sub, sub, |a, b, p| subm(a, b, p));

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let (x, y) = FieldElement::align(self, rhs);
        let p = x.ctx.p;
        if x.ctx.k == 1 {
            return FieldElement {
                ctx: x.ctx,
                rep: vec![mulm(x.rep[0], y.rep[0], p)],
            };
        }
        let prod = rawpoly::mul(&x.rep, &y.rep, p);
        let mut red = if prod.len() > x.ctx.k as usize {
            rawpoly::rem(&prod, &x.ctx.modulus, p)
        } else {
            prod
        };
        red.resize(x.ctx.k as usize, 0);
        FieldElement { ctx: x.ctx, rep: red }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.ctx.p;
        FieldElement {
            ctx: self.ctx.clone(),
            rep: self.rep.iter().map(|&c| subm(0, c, p)).collect(),
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl std::ops::Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self * &rhs.inv()
    }
}

impl std::ops::Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}
