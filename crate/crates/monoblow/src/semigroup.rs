//! Finitely generated affine subsemigroups of ℤ².
//!
//! An [`AffineSemigroup`] is the coordinate-ring datum of an affine toric
//! surface chart. Construction rejects generator sets whose conical hull
//! contains a line, so membership stays decidable; hulls that collapse to a
//! single ray are kept as degenerate values because they can appear in
//! intermediate computations.

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{
    cone_contains, cone_hull, det_wide, dot_wide, gl2z_classify, hilbert_basis, sort_ccw, Cone2,
    Hull, LatticeVec, QuotientType,
};

/// A finitely generated subsemigroup of ℤ² with pointed conical hull.
///
/// Generators are stored deduplicated and sorted counterclockwise; the hull
/// is computed eagerly at construction so every later operation is a pure
/// read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSemigroup {
    gens: Vec<LatticeVec>,
    hull: Hull,
}

impl AffineSemigroup {
    pub fn try_new(gens: Vec<LatticeVec>) -> Result<AffineSemigroup> {
        let mut gens = gens;
        for g in &gens {
            if g.is_zero() {
                return Err(Error::ZeroVector);
            }
            if g.0 == i64::MIN || g.1 == i64::MIN {
                return Err(Error::Overflow);
            }
        }
        let hull = cone_hull(&gens)?;
        sort_ccw(&mut gens);
        gens.dedup();
        Ok(AffineSemigroup { gens, hull })
    }

    /// The semigroup `⟨(1,0), (1,1), (n, n+1)⟩` whose toric surface is the
    /// hypersurface `xz = y^{n+1}`.
    pub fn gamma_n(n: i64) -> Result<AffineSemigroup> {
        if n < 1 {
            return Err(Error::InvalidQuotient { n, q: 0 });
        }
        AffineSemigroup::try_new(vec![
            LatticeVec(1, 0),
            LatticeVec(1, 1),
            LatticeVec(n, n.checked_add(1).ok_or(Error::Overflow)?),
        ])
    }

    pub fn gens(&self) -> &[LatticeVec] {
        &self.gens
    }

    pub fn hull(&self) -> &Hull {
        &self.hull
    }

    /// The conical hull when it is full-dimensional.
    pub fn cone(&self) -> Result<Cone2> {
        self.hull.cone()
    }

    /// Exact membership: `v` is a nonnegative integer combination of the
    /// generators.
    ///
    /// Decided by bounded dynamic programming against a strictly positive
    /// integral functional on the hull (the sum of the two primitive dual-ray
    /// functionals), which bounds every coefficient by the value of `v`.
    pub fn member(&self, v: LatticeVec) -> bool {
        if v.is_zero() {
            return true;
        }
        match self.hull {
            Hull::Ray(p) => self.member_on_ray(p, v),
            Hull::Cone(c) => self.member_in_cone(&c, v),
        }
    }

    fn member_in_cone(&self, c: &Cone2, v: LatticeVec) -> bool {
        if !cone_contains(c, v) {
            return false;
        }
        let dual = c.dual().expect("hull coordinates were validated");
        let (s1, s2) = (dual.r1(), dual.r2());
        let weight = |x: LatticeVec| dot_wide(s1, x) + dot_wide(s2, x);
        let mut memo: HashMap<LatticeVec, bool> = HashMap::new();
        self.reachable(c, weight(v), v, &weight, &mut memo)
    }

    fn reachable(
        &self,
        c: &Cone2,
        w_v: i128,
        v: LatticeVec,
        weight: &dyn Fn(LatticeVec) -> i128,
        memo: &mut HashMap<LatticeVec, bool>,
    ) -> bool {
        if v.is_zero() {
            return true;
        }
        if let Some(&hit) = memo.get(&v) {
            return hit;
        }
        let mut ok = false;
        for &g in &self.gens {
            if weight(g) > w_v {
                continue;
            }
            let Ok(rest) = v.checked_sub(g) else { continue };
            if cone_contains(c, rest) && self.reachable(c, w_v - weight(g), rest, weight, memo) {
                ok = true;
                break;
            }
        }
        memo.insert(v, ok);
        ok
    }

    fn member_on_ray(&self, p: LatticeVec, v: LatticeVec) -> bool {
        let Some(m) = multiple_of(v, p) else { return false };
        if m < 0 {
            return false;
        }
        if m == 0 {
            return true;
        }
        let coeffs: Vec<i64> = self
            .gens
            .iter()
            .map(|&g| multiple_of(g, p).expect("ray generators are parallel"))
            .collect();
        let g = coeffs.iter().fold(0i64, |acc, &c| acc.gcd(&c));
        if m % g != 0 {
            return false;
        }
        let m = m / g;
        let coeffs: Vec<i64> = coeffs.iter().map(|&c| c / g).collect();
        let c0 = *coeffs.iter().min().expect("nonempty") as usize;
        // Apéry set by shortest paths on residues mod the smallest
        // coefficient: m is representable iff it is at least the minimal
        // representable value in its residue class.
        let mut dist = vec![i128::MAX; c0];
        dist[0] = 0;
        let mut heap = std::collections::BinaryHeap::new();
        heap.push(std::cmp::Reverse((0i128, 0usize)));
        while let Some(std::cmp::Reverse((d, r))) = heap.pop() {
            if d > dist[r] {
                continue;
            }
            for &cst in &coeffs {
                let nr = (r + (cst as usize) % c0) % c0;
                let nd = d + cst as i128;
                if nd < dist[nr] {
                    dist[nr] = nd;
                    heap.push(std::cmp::Reverse((nd, nr)));
                }
            }
        }
        dist[(m as usize) % c0] <= m as i128
    }

    /// Drops every generator that the remaining ones already produce,
    /// iterating until stable. The generated semigroup is unchanged.
    pub fn minimal_generators(&self) -> AffineSemigroup {
        let mut gens = self.gens.clone();
        loop {
            let mut removed = false;
            for i in 0..gens.len() {
                if gens.len() == 1 {
                    break;
                }
                let mut rest = gens.clone();
                let candidate = rest.remove(i);
                let sub = AffineSemigroup::try_new(rest)
                    .expect("removing generators keeps the hull pointed");
                if sub.member(candidate) {
                    gens.remove(i);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
        }
        AffineSemigroup::try_new(gens).expect("subset of validated generators")
    }

    /// The saturation: the semigroup generated by the Hilbert basis of the
    /// hull. Contains `self`, and equals it exactly when `self` is
    /// saturated.
    pub fn saturation(&self) -> Result<AffineSemigroup> {
        let c = self.cone()?;
        AffineSemigroup::try_new(hilbert_basis(&c)?)
    }

    pub fn is_saturated(&self) -> Result<bool> {
        let c = self.cone()?;
        Ok(hilbert_basis(&c)?.iter().all(|&h| self.member(h)))
    }

    /// Classifies the associated affine toric surface.
    pub fn classify(&self) -> Result<ChartClass> {
        let c = self.cone()?;
        let qt = gl2z_classify(&c)?;
        Ok(if self.is_saturated()? {
            if qt.is_smooth() {
                ChartClass::Smooth
            } else {
                ChartClass::CyclicQuotient(qt)
            }
        } else {
            ChartClass::NonNormal(qt)
        })
    }

    /// Extensional equality: mutual membership of the generator sets.
    pub fn eq_as_semigroup(&self, other: &AffineSemigroup) -> bool {
        self.gens.iter().all(|&g| other.member(g))
            && other.gens.iter().all(|&g| self.member(g))
    }
}

/// The integer `m` with `v = m·p`, if there is one (`p` primitive).
fn multiple_of(v: LatticeVec, p: LatticeVec) -> Option<i64> {
    if v.is_zero() {
        return Some(0);
    }
    if det_wide(v, p) != 0 {
        return None;
    }
    let m = if p.0 != 0 { v.0 / p.0 } else { v.1 / p.1 };
    if p.0.checked_mul(m) == Some(v.0) && p.1.checked_mul(m) == Some(v.1) {
        Some(m)
    } else {
        None
    }
}

impl Serialize for AffineSemigroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.gens.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AffineSemigroup {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<AffineSemigroup, D::Error> {
        let gens = Vec::<LatticeVec>::deserialize(deserializer)?;
        AffineSemigroup::try_new(gens).map_err(D::Error::custom)
    }
}

/// Classification of a chart: smooth, a cyclic quotient singularity, or a
/// non-normal semigroup tagged with the class of its saturation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartClass {
    Smooth,
    CyclicQuotient(QuotientType),
    NonNormal(QuotientType),
}

impl ChartClass {
    pub fn is_smooth(&self) -> bool {
        matches!(self, ChartClass::Smooth)
    }
}

impl fmt::Display for ChartClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartClass::Smooth => write!(f, "smooth"),
            ChartClass::CyclicQuotient(qt) => write!(f, "cyclic:{qt}"),
            ChartClass::NonNormal(qt) => write!(f, "nonnormal:{qt}"),
        }
    }
}

impl FromStr for ChartClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<ChartClass> {
        if s == "smooth" {
            return Ok(ChartClass::Smooth);
        }
        let parse_qt = |body: &str| -> Result<QuotientType> {
            let (n, q) = body
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad chart class `{s}`")))?;
            let n = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad chart class `{s}`")))?;
            let q = q
                .parse()
                .map_err(|_| Error::Parse(format!("bad chart class `{s}`")))?;
            QuotientType::new(n, q)
        };
        if let Some(body) = s.strip_prefix("cyclic:") {
            Ok(ChartClass::CyclicQuotient(parse_qt(body)?))
        } else if let Some(body) = s.strip_prefix("nonnormal:") {
            Ok(ChartClass::NonNormal(parse_qt(body)?))
        } else {
            Err(Error::Parse(format!("bad chart class `{s}`")))
        }
    }
}

impl Serialize for ChartClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ChartClass {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<ChartClass, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}
