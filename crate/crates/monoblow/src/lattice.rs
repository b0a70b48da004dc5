//! Exact rank-2 integer lattice geometry.
//!
//! Vectors carry checked 64-bit coordinates; determinants are evaluated in
//! 128-bit arithmetic so sign tests never overflow. Cones are pointed,
//! two-dimensional and stored with counterclockwise rays
//! (`det(r1, r2) > 0`); constructors normalize orientation and
//! primitivity.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A point of the rank-2 lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeVec(pub i64, pub i64);

impl LatticeVec {
    pub const ZERO: LatticeVec = LatticeVec(0, 0);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn checked_add(self, rhs: LatticeVec) -> Result<LatticeVec> {
        Ok(LatticeVec(
            self.0.checked_add(rhs.0).ok_or(Error::Overflow)?,
            self.1.checked_add(rhs.1).ok_or(Error::Overflow)?,
        ))
    }

    pub fn checked_sub(self, rhs: LatticeVec) -> Result<LatticeVec> {
        Ok(LatticeVec(
            self.0.checked_sub(rhs.0).ok_or(Error::Overflow)?,
            self.1.checked_sub(rhs.1).ok_or(Error::Overflow)?,
        ))
    }

    pub fn checked_neg(self) -> Result<LatticeVec> {
        Ok(LatticeVec(
            self.0.checked_neg().ok_or(Error::Overflow)?,
            self.1.checked_neg().ok_or(Error::Overflow)?,
        ))
    }

    pub fn checked_scale(self, k: i64) -> Result<LatticeVec> {
        Ok(LatticeVec(
            self.0.checked_mul(k).ok_or(Error::Overflow)?,
            self.1.checked_mul(k).ok_or(Error::Overflow)?,
        ))
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn rot90_ccw(self) -> Result<LatticeVec> {
        Ok(LatticeVec(self.1.checked_neg().ok_or(Error::Overflow)?, self.0))
    }

    /// Clockwise rotation by a quarter turn.
    pub fn rot90_cw(self) -> Result<LatticeVec> {
        Ok(LatticeVec(self.1, self.0.checked_neg().ok_or(Error::Overflow)?))
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// Determinant of the pair `(v, w)` evaluated without overflow.
pub fn det_wide(v: LatticeVec, w: LatticeVec) -> i128 {
    v.0 as i128 * w.1 as i128 - v.1 as i128 * w.0 as i128
}

/// Determinant narrowed back to `i64`; the narrowing is the only way this
/// can fail.
pub fn det(v: LatticeVec, w: LatticeVec) -> Result<i64> {
    i64::try_from(det_wide(v, w)).map_err(|_| Error::Overflow)
}

/// Scalar product, evaluated without overflow.
pub fn dot_wide(v: LatticeVec, w: LatticeVec) -> i128 {
    v.0 as i128 * w.0 as i128 + v.1 as i128 * w.1 as i128
}

/// The primitive vector in the direction of `v`.
pub fn primitive(v: LatticeVec) -> Result<LatticeVec> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = v.0.abs().gcd(&v.1.abs());
    Ok(LatticeVec(v.0 / g, v.1 / g))
}

/// A pointed two-dimensional rational cone with counterclockwise primitive
/// rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[LatticeVec; 2]", into = "[LatticeVec; 2]")]
pub struct Cone2 {
    r1: LatticeVec,
    r2: LatticeVec,
}

impl Cone2 {
    /// Builds the cone spanned by `r1` and `r2`, normalizing the rays to be
    /// primitive and swapping them if they are given clockwise.
    pub fn new(r1: LatticeVec, r2: LatticeVec) -> Result<Cone2> {
        let r1 = primitive(r1)?;
        let r2 = primitive(r2)?;
        match det_wide(r1, r2) {
            d if d > 0 => Ok(Cone2 { r1, r2 }),
            d if d < 0 => Ok(Cone2 { r1: r2, r2: r1 }),
            _ => Err(Error::DegenerateCone),
        }
    }

    pub fn r1(&self) -> LatticeVec {
        self.r1
    }

    pub fn r2(&self) -> LatticeVec {
        self.r2
    }

    /// Index of the sublattice spanned by the rays; 1 exactly for smooth
    /// cones.
    pub fn index(&self) -> i128 {
        det_wide(self.r1, self.r2)
    }

    /// The dual cone under the standard pairing, again counterclockwise.
    pub fn dual(&self) -> Result<Cone2> {
        // The facet normals: rotate r2 clockwise and r1 counterclockwise.
        let s1 = self.r2.rot90_cw()?;
        let s2 = self.r1.rot90_ccw()?;
        debug_assert!(det_wide(s1, s2) > 0);
        Ok(Cone2 { r1: s1, r2: s2 })
    }
}

impl From<Cone2> for [LatticeVec; 2] {
    fn from(c: Cone2) -> Self {
        [c.r1, c.r2]
    }
}

impl TryFrom<[LatticeVec; 2]> for Cone2 {
    type Error = Error;

    fn try_from(rays: [LatticeVec; 2]) -> Result<Cone2> {
        Cone2::new(rays[0], rays[1])
    }
}

impl fmt::Display for Cone2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone({}, {})", self.r1, self.r2)
    }
}

/// Result of taking the conical hull of a finite vector set: either a full
/// two-dimensional pointed cone or a single ray. A hull containing a line is
/// rejected with [`Error::NotPointed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hull {
    Cone(Cone2),
    Ray(LatticeVec),
}

impl Hull {
    pub fn cone(&self) -> Result<Cone2> {
        match self {
            Hull::Cone(c) => Ok(*c),
            Hull::Ray(_) => Err(Error::DegenerateCone),
        }
    }
}

/// Extreme rays of the cone generated by `vs`.
///
/// Returns the degenerate [`Hull::Ray`] marker when all inputs are parallel
/// with a common direction, and [`Error::NotPointed`] when the generated
/// cone contains a line.
pub fn cone_hull(vs: &[LatticeVec]) -> Result<Hull> {
    if vs.is_empty() {
        return Err(Error::NoGenerators);
    }
    let mut dirs: Vec<LatticeVec> = Vec::new();
    for &v in vs {
        let p = primitive(v)?;
        if !dirs.contains(&p) {
            dirs.push(p);
        }
    }
    if dirs.len() == 1 {
        return Ok(Hull::Ray(dirs[0]));
    }
    let is_first = |p: LatticeVec| {
        dirs.iter()
            .all(|&q| q == p || det_wide(p, q) > 0)
    };
    let is_last = |p: LatticeVec| {
        dirs.iter()
            .all(|&q| q == p || det_wide(q, p) > 0)
    };
    let r1 = dirs.iter().copied().find(|&p| is_first(p));
    let r2 = dirs.iter().copied().find(|&p| is_last(p));
    match (r1, r2) {
        (Some(r1), Some(r2)) if r1 != r2 => {
            debug_assert!(det_wide(r1, r2) > 0);
            Ok(Hull::Cone(Cone2 { r1, r2 }))
        }
        _ => Err(Error::NotPointed),
    }
}

/// Exact membership test `v ∈ c`, decided by the signs of two determinants.
pub fn cone_contains(c: &Cone2, v: LatticeVec) -> bool {
    det_wide(c.r1, v) >= 0 && det_wide(v, c.r2) >= 0
}

/// Completes the primitive vector `r` to a lattice basis: returns `u` with
/// `det(r, u) = 1`.
fn complete_basis(r: LatticeVec) -> LatticeVec {
    // det((a,b),(u0,u1)) = a*u1 - b*u0 = 1; extended gcd on (a, b).
    let e = r.0.extended_gcd(&r.1);
    debug_assert_eq!(e.gcd, 1, "ray must be primitive");
    // a*x + b*y = 1  =>  u = (-y, x).
    LatticeVec(-e.y, e.x)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b) + if a.rem_euclid(b) != 0 { 1 } else { 0 }
}

/// The Hilbert basis of `c ∩ ℤ²`: the unique minimal generating set of the
/// semigroup of lattice points of the cone, sorted counterclockwise.
///
/// Computed by the boundary walk of the empty-triangle subdivision: the
/// basis is exactly the set of lattice points on the bounded edges of
/// `conv(c ∩ ℤ² \ {0})`, and consecutive points of that path span
/// unimodular subcones.
pub fn hilbert_basis(c: &Cone2) -> Result<Vec<LatticeVec>> {
    let n = i64::try_from(c.index()).map_err(|_| Error::Overflow)?;
    if n == 1 {
        return Ok(vec![c.r1, c.r2]);
    }
    // Normal coordinates: v -> (det(v, u), det(r1, v)) sends the cone to
    // cone((1,0), (a, n)) with 0 <= a < n after sliding u along r1.
    let u0 = complete_basis(c.r1);
    let a_raw = det(c.r2, u0)?;
    let a = a_raw.rem_euclid(n);
    let k = (a_raw - a) / n;
    let u = u0.checked_add(c.r1.checked_scale(k)?)?;
    debug_assert_eq!(det(c.r2, u)?, a);
    debug_assert!(a >= 1 && a.gcd(&n) == 1);

    // Walk the hull path in normal coordinates from (1,0) to (a,n). The
    // functional g(x,y) = n*x - a*y is positive on the path and strictly
    // decreasing, which both drives and terminates the walk.
    let g = |p: (i128, i128)| n as i128 * p.0 - a as i128 * p.1;
    let mut points: Vec<(i128, i128)> = vec![(1, 0)];
    let mut prev = (1i128, 0i128);
    let mut cur = (1i128, 1i128);
    let target = (a as i128, n as i128);
    loop {
        points.push(cur);
        if cur == target {
            break;
        }
        let gp = g(prev);
        let gc = g(cur);
        debug_assert!(gc > 0);
        let t = ceil_div(gp, gc);
        debug_assert!(t >= 2, "hull walk must turn at every vertex");
        let next = (t * cur.0 - prev.0, t * cur.1 - prev.1);
        prev = cur;
        cur = next;
    }

    // Back to the original coordinates: (x, y) -> x*r1 + y*u.
    let mut basis = Vec::with_capacity(points.len());
    for (x, y) in points {
        let x = i64::try_from(x).map_err(|_| Error::Overflow)?;
        let y = i64::try_from(y).map_err(|_| Error::Overflow)?;
        basis.push(c.r1.checked_scale(x)?.checked_add(u.checked_scale(y)?)?);
    }
    debug_assert_eq!(basis.first(), Some(&c.r1));
    debug_assert_eq!(basis.last(), Some(&c.r2));
    Ok(basis)
}

/// Hirzebruch–Jung continued fraction `n/q = b₁ − 1/(b₂ − 1/(…))` with all
/// `bᵢ ≥ 2`; these are the negated self-intersections along the minimal
/// resolution chain of the cyclic quotient of type `(n, q)`.
pub fn hj_fractions(n: i64, q: i64) -> Result<Vec<i64>> {
    if !(0 < q && q < n && n.gcd(&q) == 1) {
        return Err(Error::InvalidQuotient { n, q });
    }
    let (mut n, mut q) = (n, q);
    let mut bs = Vec::new();
    while q > 0 {
        let b = ceil_div(n as i128, q as i128) as i64;
        bs.push(b);
        let next = b * q - n;
        n = q;
        q = next;
    }
    Ok(bs)
}

/// The type of a cyclic quotient singularity: order `n` and weight `q` with
/// `0 ≤ q < n` and `gcd(n, q) = 1`. `n = 1` encodes the smooth cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientType {
    pub n: i64,
    pub q: i64,
}

impl QuotientType {
    pub fn new(n: i64, q: i64) -> Result<QuotientType> {
        let ok = n == 1 && q == 0 || 0 <= q && q < n && n.gcd(&q) == 1;
        if !ok {
            return Err(Error::InvalidQuotient { n, q });
        }
        Ok(QuotientType { n, q })
    }

    pub fn is_smooth(&self) -> bool {
        self.n == 1
    }
}

impl fmt::Display for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.n, self.q)
    }
}

fn mod_inverse(a: i64, n: i64) -> i64 {
    let e = a.extended_gcd(&n);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(n)
}

/// Classifies `c` up to lattice isomorphism.
///
/// Writing `r2 = a·r1 + n·u` in a basis `(r1, u)` gives an invariant
/// `a mod n` of the oriented cone; reversing the orientation replaces `a`
/// by its inverse mod `n`, so the unordered class is the pair
/// `{a, a⁻¹ mod n}` and we return the smaller representative. Two cones
/// classify equally precisely when the associated affine toric surfaces
/// are isomorphic; the cone of the semigroup of the quotient `1/n(1,q)`
/// classifies as `(n, q)`.
pub fn gl2z_classify(c: &Cone2) -> Result<QuotientType> {
    let n = i64::try_from(c.index()).map_err(|_| Error::Overflow)?;
    if n == 1 {
        return QuotientType::new(1, 0);
    }
    let u = complete_basis(c.r1);
    let a = det(c.r2, u)?.rem_euclid(n);
    let q = a.min(mod_inverse(a, n));
    QuotientType::new(n, q)
}

/// A 2×2 integer matrix with determinant ±1, acting on lattice vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unimodular {
    /// Row-major entries.
    pub m: [[i64; 2]; 2],
}

impl Unimodular {
    pub const IDENTITY: Unimodular = Unimodular { m: [[1, 0], [0, 1]] };

    pub fn new(m: [[i64; 2]; 2]) -> Result<Unimodular> {
        let d = m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128;
        if d == 1 || d == -1 {
            Ok(Unimodular { m })
        } else {
            Err(Error::InternalMismatch(format!(
                "matrix determinant {d} is not a unit"
            )))
        }
    }

    /// The matrix with the given columns; the column pair must be a lattice
    /// basis.
    pub fn from_columns(c1: LatticeVec, c2: LatticeVec) -> Result<Unimodular> {
        Unimodular::new([[c1.0, c2.0], [c1.1, c2.1]])
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, v: LatticeVec) -> Result<LatticeVec> {
        let mul = |a: i64, b: i64| a.checked_mul(b).ok_or(Error::Overflow);
        Ok(LatticeVec(
            mul(self.m[0][0], v.0)?
                .checked_add(mul(self.m[0][1], v.1)?)
                .ok_or(Error::Overflow)?,
            mul(self.m[1][0], v.0)?
                .checked_add(mul(self.m[1][1], v.1)?)
                .ok_or(Error::Overflow)?,
        ))
    }

    pub fn inverse(&self) -> Unimodular {
        let d = self.det();
        debug_assert!(d == 1 || d == -1);
        Unimodular {
            m: [
                [d * self.m[1][1], -d * self.m[0][1]],
                [-d * self.m[1][0], d * self.m[0][0]],
            ],
        }
    }

    pub fn compose(&self, rhs: &Unimodular) -> Result<Unimodular> {
        let mut m = [[0i64; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut acc = 0i64;
                for k in 0..2 {
                    acc = acc
                        .checked_add(
                            self.m[i][k].checked_mul(rhs.m[k][j]).ok_or(Error::Overflow)?,
                        )
                        .ok_or(Error::Overflow)?;
                }
                *entry = acc;
            }
        }
        Unimodular::new(m)
    }
}

/// Sorts vectors of a pointed cone counterclockwise; parallel vectors are
/// ordered by length.
pub fn sort_ccw(vs: &mut [LatticeVec]) {
    vs.sort_by(|&u, &v| {
        match det_wide(u, v) {
            d if d > 0 => std::cmp::Ordering::Less,
            d if d < 0 => std::cmp::Ordering::Greater,
            _ => (u.0.abs() + u.1.abs(), u).cmp(&(v.0.abs() + v.1.abs(), v)),
        }
    });
}
