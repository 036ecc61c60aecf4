//! The superelliptic curve model y^n = f(x) and its validity predicates.

use std::fmt;
use std::sync::Arc;

use crate::algebra::factor::gcd_u64;
use crate::algebra::field::{Ctx, FieldElement};
use crate::algebra::poly::{BiPoly, UniPoly};
use crate::algebra::{embed, lift_poly};
use crate::error::{Error, Result};

pub type CurveRef = Arc<SuperellipticCurve>;

/// y^n = f(x) with monic squarefree f of degree d, gcd(n, d) = 1, d > n and
/// p not dividing n. A curve built in relaxed mode skips the shape checks
/// (d > n, coprimality) and is accepted only by the point-counting oracle.
#[derive(Clone)]
pub struct SuperellipticCurve {
    ctx: Ctx,
    n: u32,
    f: UniPoly,
    d: u32,
    genus: u32,
    relaxed: bool,
    /// Leading coefficient of the original input when it was not monic.
    normalized_from: Option<FieldElement>,
}

impl SuperellipticCurve {
    pub fn new(ctx: &Ctx, n: u32, f: &UniPoly) -> Result<CurveRef> {
        Self::build(ctx, n, f, false)
    }

    /// Relaxed validation for oracle-only sanity curves (e.g. elliptic
    /// d = n + 1 cases); the group-law pipeline rejects these.
    pub fn new_relaxed(ctx: &Ctx, n: u32, f: &UniPoly) -> Result<CurveRef> {
        Self::build(ctx, n, f, true)
    }

    fn build(ctx: &Ctx, n: u32, f: &UniPoly, relaxed: bool) -> Result<CurveRef> {
        let f = lift_poly(f, ctx)?;
        let d = match f.degree() {
            None | Some(0) => return Err(Error::DegreeTooSmall { d: 0, n }),
            Some(d) => d as u32,
        };
        let p = ctx.characteristic();
        if n < 2 {
            return Err(Error::DegreeTooSmall { d, n });
        }
        if p == n as u64 || (n as u64 % p == 0) {
            return Err(Error::WildCharacteristic { p, n });
        }
        let g = gcd_u64(n as u64, d as u64);
        if !relaxed {
            if g != 1 {
                return Err(Error::GcdViolation(g));
            }
            if d <= n {
                return Err(Error::DegreeTooSmall { d, n });
            }
        }
        let normalized_from = match f.leading() {
            Some(l) if !l.is_one() => Some(l.clone()),
            _ => None,
        };
        let f = f.monic();
        if !f.is_squarefree() {
            return Err(Error::Singular);
        }
        let genus_2x = (n as i64) * (d as i64 - 1) - d as i64 - g as i64;
        if genus_2x < 0 || genus_2x % 2 != 0 {
            return Err(Error::DegreeTooSmall { d, n });
        }
        let genus = (genus_2x / 2 + 1) as u32;
        if !relaxed && genus < 2 {
            return Err(Error::GenusTooSmall { genus });
        }
        Ok(Arc::new(SuperellipticCurve {
            ctx: ctx.clone(),
            n,
            f,
            d,
            genus,
            relaxed,
            normalized_from,
        }))
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn f(&self) -> &UniPoly {
        &self.f
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    pub fn normalized_from(&self) -> Option<&FieldElement> {
        self.normalized_from.as_ref()
    }

    /// The affine equation y^n - f(x) as a bivariate polynomial.
    pub fn equation(&self) -> BiPoly {
        BiPoly::curve_equation(self.n, &self.f)
    }

    /// Pole order at infinity of the monomial x^i y^j on this curve.
    pub fn order_at_infinity(&self, i: u32, j: u32) -> u32 {
        self.n * i + self.d * j
    }

    /// Checks y^n = f(x) for coordinates over any common extension.
    pub fn contains(&self, x: &FieldElement, y: &FieldElement) -> Result<bool> {
        if x.ctx().characteristic() != self.ctx.characteristic()
            || y.ctx().characteristic() != self.ctx.characteristic()
            || x.ctx().degree() != y.ctx().degree()
        {
            return Err(Error::FieldMismatch);
        }
        let f = lift_poly(&self.f, x.ctx())?;
        Ok(y.pow(self.n as u128) == f.eval(x))
    }

    /// #X(F_{p^(k*m)}) including the single point at infinity.
    pub fn count_points(&self, m: u32, scan_bound: u128) -> Result<u128> {
        let p = self.ctx.characteristic();
        let deg = self.ctx.degree() * m;
        let q = (p as u128)
            .checked_pow(deg)
            .ok_or(Error::ScanBoundExceeded {
                q: u128::MAX,
                bound: scan_bound,
            })?;
        if q > scan_bound {
            return Err(Error::ScanBoundExceeded { q, bound: scan_bound });
        }
        let ext = crate::algebra::field_make(p, deg)?;
        let f = lift_poly(&self.f, &ext)?;
        let gamma = gcd_u64(self.n as u64, (q - 1) as u64) as u128;
        let exp = (q - 1) / gamma;
        let mut count: u128 = 1; // infinity
        for x in crate::algebra::field::FieldCtx::all_elements(&ext) {
            let c = f.eval(&x);
            if c.is_zero() {
                count += 1;
            } else if c.pow(exp).is_one() {
                count += gamma;
            }
        }
        Ok(count)
    }
}

impl fmt::Debug for SuperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^{} = {} over F_{}^{} (g = {})",
            self.n,
            self.f,
            self.ctx.characteristic(),
            self.ctx.degree(),
            self.genus
        )
    }
}

impl PartialEq for SuperellipticCurve {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.n == other.n && self.f == other.f
    }
}

impl Eq for SuperellipticCurve {}

/// A point (x, y) with y^n = f(x), coordinates over a common extension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffinePoint {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl AffinePoint {
    pub fn new(curve: &SuperellipticCurve, x: FieldElement, y: FieldElement) -> Result<Self> {
        let (x, y) = align_coords(x, y)?;
        if !curve.contains(&x, &y)? {
            return Err(Error::PointOffCurve {
                x: x.to_string(),
                y: y.to_string(),
            });
        }
        Ok(AffinePoint { x, y })
    }

    /// Whether the point is fixed by the superelliptic projection's
    /// ramification, i.e. y = 0.
    pub fn is_ramification(&self) -> bool {
        self.y.is_zero()
    }

    pub fn frobenius(&self, times: u32) -> AffinePoint {
        AffinePoint {
            x: self.x.frobenius(times),
            y: self.y.frobenius(times),
        }
    }

    pub fn embed_into(&self, target: &Ctx) -> Result<AffinePoint> {
        Ok(AffinePoint {
            x: embed(&self.x, target)?,
            y: embed(&self.y, target)?,
        })
    }
}

fn align_coords(x: FieldElement, y: FieldElement) -> Result<(FieldElement, FieldElement)> {
    if x.ctx() == y.ctx() {
        return Ok((x, y));
    }
    if x.ctx().characteristic() != y.ctx().characteristic() {
        return Err(Error::FieldMismatch);
    }
    let target = crate::algebra::join_fields(x.ctx(), y.ctx(), crate::algebra::DEFAULT_EXT_CAP)?;
    Ok((embed(&x, &target)?, embed(&y, &target)?))
}

impl fmt::Debug for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}
