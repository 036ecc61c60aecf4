//! Root finding, distinct/equal-degree factorization, splitting fields, and
//! canonical embeddings between extensions of the same prime field.
//!
//! Small fields are handled by exhaustive scan; larger ones by the usual
//! gcd-with-Frobenius machinery and randomized equal-degree splitting with an
//! explicit seed, so runs are reproducible.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::{field_make, Ctx, FieldCtx, FieldElement};
use crate::algebra::poly::UniPoly;
use crate::error::{Error, Result};

/// Fields up to this many elements are searched by direct evaluation.
pub const SCAN_THRESHOLD: u128 = 1 << 12;

/// Default bound on the degree of automatically constructed extensions.
pub const DEFAULT_EXT_CAP: u32 = 24;

/// Seed used by the randomized splitting steps unless a caller provides one.
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_cafe;

fn field_order_big(ctx: &Ctx) -> BigUint {
    BigUint::from(ctx.characteristic()).pow(ctx.degree())
}

/// base^e mod m over the coefficient field of m.
pub fn powmod(base: &UniPoly, e: &BigUint, m: &UniPoly) -> UniPoly {
    let ctx = m.ctx();
    let mut acc = UniPoly::one(ctx);
    let mut b = base.rem(m);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = (&acc * &b).rem(m);
        }
        if i + 1 < bits {
            b = (&b * &b).rem(m);
        }
    }
    acc
}

/// Largest squarefree divisor with the same root set, valid in char p
/// (handles f' = 0 by descending through p-th powers).
pub fn squarefree_part(f: &UniPoly) -> UniPoly {
    assert!(!f.is_zero());
    if f.degree() == Some(0) {
        return UniPoly::one(f.ctx());
    }
    let d = f.derivative();
    if d.is_zero() {
        // f(x) = g(x^p); roots of f are roots of the p-th-root pullback
        let ctx = f.ctx();
        let p = ctx.characteristic() as usize;
        let k = ctx.degree();
        let mut coeffs = Vec::new();
        for (i, c) in f.coeffs().iter().enumerate() {
            if i % p == 0 {
                // c^(p^(k-1)) is the p-th root in F_{p^k}
                coeffs.push(c.frobenius(k - 1));
            } else {
                debug_assert!(c.is_zero());
            }
        }
        return squarefree_part(&UniPoly::from_coeffs(ctx, coeffs));
    }
    let g = f.gcd(&d);
    f.exact_div(&g, "squarefree").unwrap().monic()
}

/// Degrees d_1 <= d_2 <= ... of the irreducible factors of a squarefree
/// monic polynomial, paired with the product of all factors of that degree.
pub fn distinct_degree_split(f: &UniPoly) -> Vec<(usize, UniPoly)> {
    let mut f = f.monic();
    let ctx = f.ctx().clone();
    let mut out = Vec::new();
    let mut h = UniPoly::x(&ctx).rem(&f);
    let q = field_order_big(&ctx);
    let mut d = 1usize;
    while f.degree().unwrap_or(0) >= 2 * d {
        h = powmod(&h, &q, &f);
        let g = f.gcd(&(&h - &UniPoly::x(&ctx)));
        if g.degree().unwrap_or(0) > 0 {
            out.push((d, g.clone()));
            f = f.exact_div(&g, "ddf").unwrap();
            h = h.rem(&f);
        }
        d += 1;
    }
    if f.degree().unwrap_or(0) > 0 {
        out.push((f.degree().unwrap(), f));
    }
    out
}

/// Splits a squarefree product of degree-d irreducibles into the factors.
pub fn equal_degree_split(f: &UniPoly, d: usize, rng: &mut impl Rng) -> Vec<UniPoly> {
    let ctx = f.ctx().clone();
    let deg = f.degree().unwrap();
    if deg == d {
        return vec![f.monic()];
    }
    let q = field_order_big(&ctx);
    let p = ctx.characteristic();
    loop {
        let a = UniPoly::from_coeffs(
            &ctx,
            (0..deg)
                .map(|_| {
                    let idx = rng.gen_range(0..ctx.order().unwrap_or(u128::MAX >> 1));
                    FieldCtx::element_by_index(&ctx, idx)
                })
                .collect(),
        );
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g0 = f.gcd(&a);
        if g0.degree().unwrap_or(0) > 0 && g0.degree() < f.degree() {
            let rest = f.exact_div(&g0, "edf").unwrap();
            let mut out = equal_degree_split(&g0, d, rng);
            out.extend(equal_degree_split(&rest, d, rng));
            out.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
            return out;
        }
        let b = if p == 2 {
            // trace map splitting in characteristic 2
            let steps = ctx.degree() as usize * d;
            let mut acc = a.rem(f);
            let mut t = a.rem(f);
            for _ in 1..steps {
                t = (&t * &t).rem(f);
                acc = &acc + &t;
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::from(1u8)) >> 1;
            &powmod(&a, &e, f) - &UniPoly::one(&ctx)
        };
        let g = f.gcd(&b);
        if g.degree().unwrap_or(0) > 0 && g.degree() < f.degree() {
            let rest = f.exact_div(&g, "edf").unwrap();
            let mut out = equal_degree_split(&g, d, rng);
            out.extend(equal_degree_split(&rest, d, rng));
            out.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
            return out;
        }
    }
}

/// Monic irreducible factors of f over its own coefficient field, sorted,
/// with multiplicities.
pub fn factorize(f: &UniPoly, seed: u64) -> Vec<(UniPoly, usize)> {
    assert!(!f.is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sf = squarefree_part(f);
    let mut factors: Vec<UniPoly> = Vec::new();
    for (d, product) in distinct_degree_split(&sf) {
        factors.extend(equal_degree_split(&product, d, &mut rng));
    }
    factors.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    let mut out = Vec::new();
    for w in factors {
        let mut mult = 0usize;
        let mut rest = f.clone();
        loop {
            let (q, r) = rest.divmod(&w);
            if r.is_zero() {
                mult += 1;
                rest = q;
            } else {
                break;
            }
        }
        out.push((w, mult));
    }
    out
}

/// All roots of `a` in the field `ctx` (which must contain a's coefficient
/// field), with multiplicity, sorted.
pub fn poly_roots(a: &UniPoly, ctx: &Ctx) -> Vec<(FieldElement, usize)> {
    poly_roots_seeded(a, ctx, DEFAULT_FACTOR_SEED)
}

pub fn poly_roots_seeded(a: &UniPoly, ctx: &Ctx, seed: u64) -> Vec<(FieldElement, usize)> {
    assert!(!a.is_zero(), "root finding on the zero polynomial");
    let a = lift_poly(a, ctx).expect("coefficient field embeds into the root field");
    if a.degree() == Some(0) {
        return vec![];
    }
    let mut distinct: Vec<FieldElement> = Vec::new();
    let q = ctx.order();
    if q.map(|q| q <= SCAN_THRESHOLD).unwrap_or(false) {
        for x in FieldCtx::all_elements(ctx) {
            if a.eval(&x).is_zero() {
                distinct.push(x);
            }
        }
    } else {
        let sf = squarefree_part(&a);
        let qq = field_order_big(ctx);
        let xq = powmod(&UniPoly::x(ctx), &qq, &sf);
        let linear = sf.gcd(&(&xq - &UniPoly::x(ctx)));
        if linear.degree().unwrap_or(0) > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for fac in equal_degree_split(&linear, 1, &mut rng) {
                // fac = x + c, root = -c
                distinct.push(-&fac.coeff(0));
            }
        }
    }
    distinct.sort();
    let mut out = Vec::new();
    for r in distinct {
        let lin = UniPoly::from_roots(ctx, std::slice::from_ref(&r));
        let mut mult = 0usize;
        let mut rest = a.clone();
        loop {
            let (q, rem) = rest.divmod(&lin);
            if rem.is_zero() {
                mult += 1;
                rest = q;
            } else {
                break;
            }
        }
        debug_assert!(mult > 0);
        out.push((r, mult));
    }
    out
}

/// Smallest extension of a's coefficient field over which a splits into
/// linear factors.
pub fn splitting_field(a: &UniPoly) -> Result<Ctx> {
    splitting_field_capped(a, DEFAULT_EXT_CAP)
}

pub fn splitting_field_capped(a: &UniPoly, cap: u32) -> Result<Ctx> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = a.ctx();
    if a.degree() == Some(0) {
        return Ok(ctx.clone());
    }
    let sf = squarefree_part(a);
    let mut lcm: u64 = 1;
    for (d, _) in distinct_degree_split(&sf) {
        let d = d as u64;
        lcm = lcm / gcd_u64(lcm, d) * d;
    }
    let needed = ctx.degree() as u64 * lcm;
    if needed > cap as u64 {
        return Err(Error::DegreeOverflow {
            needed: needed as u32,
            cap,
        });
    }
    field_make(ctx.characteristic(), needed as u32)
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

// ---------------------------------------------------------------------------
// embeddings between canonical extensions
// ---------------------------------------------------------------------------

/// The canonical image of the generator of `src` inside `target`: the least
/// root (by coefficient-vector order) of src's modulus. Requires
/// src.degree() | target.degree() and equal characteristic.
pub fn embedding_root(src: &Ctx, target: &Ctx) -> Result<FieldElement> {
    if src.characteristic() != target.characteristic() || target.degree() % src.degree() != 0 {
        return Err(Error::FieldMismatch);
    }
    let modulus = UniPoly::from_coeffs(
        target,
        src.modulus_coeffs()
            .iter()
            .map(|&c| FieldCtx::constant(target, c))
            .collect(),
    );
    let roots = poly_roots(&modulus, target);
    debug_assert_eq!(roots.len(), src.degree() as usize);
    Ok(roots.into_iter().next().expect("modulus splits").0)
}

/// Canonically embeds an element into a larger canonical extension.
pub fn embed(e: &FieldElement, target: &Ctx) -> Result<FieldElement> {
    if e.ctx() == target {
        return Ok(e.clone());
    }
    if e.ctx().characteristic() != target.characteristic() {
        return Err(Error::FieldMismatch);
    }
    if e.ctx().degree() == 1 {
        return Ok(FieldCtx::constant(target, e.rep()[0]));
    }
    if target.degree() % e.ctx().degree() != 0 {
        return Err(Error::FieldMismatch);
    }
    let root = embedding_root(e.ctx(), target)?;
    // Horner over the rep digits
    let mut acc = FieldCtx::zero(target);
    for &c in e.rep().iter().rev() {
        acc = &(&acc * &root) + &FieldCtx::constant(target, c);
    }
    Ok(acc)
}

/// Embeds every coefficient of a polynomial.
pub fn lift_poly(p: &UniPoly, target: &Ctx) -> Result<UniPoly> {
    if p.ctx() == target {
        return Ok(p.clone());
    }
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| embed(c, target))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::from_coeffs(target, coeffs))
}

/// Smallest s | k such that every element is fixed by Frobenius^s.
pub fn minimal_subfield_degree(elts: &[FieldElement]) -> u32 {
    let k = elts
        .iter()
        .map(|e| e.ctx().degree())
        .max()
        .unwrap_or(1);
    let mut s = 1;
    while s <= k {
        if k % s == 0 && elts.iter().all(|e| e.ctx().degree() == 1 || e.in_subfield(s)) {
            return s;
        }
        s += 1;
    }
    k
}

/// Rewrites elements of F_{p^k} over the smallest subfield containing all of
/// them, returning the canonical subfield context and the rewritten reps.
pub fn compress_to_minimal_subfield(elts: &[FieldElement]) -> Result<(Ctx, Vec<FieldElement>)> {
    if elts.is_empty() {
        return Err(Error::FieldMismatch);
    }
    let ctx = elts
        .iter()
        .max_by_key(|e| e.ctx().degree())
        .unwrap()
        .ctx()
        .clone();
    let elts: Vec<FieldElement> = elts
        .iter()
        .map(|e| embed(e, &ctx))
        .collect::<Result<Vec<_>>>()?;
    let s = minimal_subfield_degree(&elts);
    if s == ctx.degree() {
        return Ok((ctx, elts));
    }
    let p = ctx.characteristic();
    let sub = field_make(p, s)?;
    if s == 1 {
        let out = elts
            .iter()
            .map(|e| FieldCtx::constant(&sub, e.rep()[0]))
            .collect();
        return Ok((sub, out));
    }
    // basis of the image: powers of the canonical embedding root
    let root = embedding_root(&sub, &ctx)?;
    let mut basis = Vec::with_capacity(s as usize);
    let mut pow = FieldCtx::one(&ctx);
    for _ in 0..s {
        basis.push(pow.clone());
        pow = &pow * &root;
    }
    let k = ctx.degree() as usize;
    let out = elts
        .iter()
        .map(|e| {
            let sol = solve_fp_system(&basis, e.rep(), k, p)
                .expect("subfield membership guarantees a preimage");
            FieldCtx::from_rep(&sub, &sol)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((sub, out))
}

/// Solves sum_j z_j * basis_j = target over F_p, reps as digit vectors.
fn solve_fp_system(basis: &[FieldElement], target: &[u64], k: usize, p: u64) -> Option<Vec<u64>> {
    use crate::algebra::field::{invm, mulm, subm};
    let s = basis.len();
    // augmented k x (s+1) matrix
    let mut m: Vec<Vec<u64>> = (0..k)
        .map(|row| {
            let mut r: Vec<u64> = basis.iter().map(|b| b.rep()[row]).collect();
            r.push(target[row]);
            r
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut row = 0usize;
    for col in 0..s {
        let Some(pr) = (row..k).find(|&r| m[r][col] != 0) else {
            return None; // basis is full rank, so every column pivots
        };
        m.swap(row, pr);
        let inv = invm(m[row][col], p);
        for j in col..=s {
            m[row][j] = mulm(m[row][j], inv, p);
        }
        for r in 0..k {
            if r != row && m[r][col] != 0 {
                let c = m[r][col];
                for j in col..=s {
                    m[r][j] = subm(m[r][j], mulm(c, m[row][j], p), p);
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // consistency: remaining rows must be zero
    for r in row..k {
        if m[r][s] != 0 {
            return None;
        }
    }
    Some((0..s).map(|c| m[pivot_rows[c]][s]).collect())
}

/// Canonical common overfield of two contexts (lcm of degrees).
pub fn join_fields(a: &Ctx, b: &Ctx, cap: u32) -> Result<Ctx> {
    if a.characteristic() != b.characteristic() {
        return Err(Error::FieldMismatch);
    }
    let l = lcm_u64(a.degree() as u64, b.degree() as u64);
    if l > cap as u64 {
        return Err(Error::DegreeOverflow {
            needed: l as u32,
            cap,
        });
    }
    if l == a.degree() as u64 {
        return Ok(a.clone());
    }
    if l == b.degree() as u64 {
        return Ok(b.clone());
    }
    field_make(a.characteristic(), l as u32)
}
