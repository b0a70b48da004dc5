//! Combinatorial blow-up of a monomial ideal on an affine toric surface.
//!
//! Given a semigroup `Γ` and exponents `m_1, …, m_k` inside it, the blow-up
//! along the monomial ideal they generate decomposes into affine charts
//! indexed by the vertices of the Newton polyhedron
//! `𝒩(I) = conv(∪ m_i + σ)`, with chart semigroups
//! `Γ_i = Γ + ℤ₊{m_j − m_i}`. The normalization of the blow-up is realized
//! independently on the dual side as the normal fan of `𝒩(I)` refining the
//! dual cone; the two routes are cross-checked in the test suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{det_wide, dot_wide, primitive, Cone2, LatticeVec};
use crate::semigroup::{AffineSemigroup, ChartClass};

/// A monomial ideal presented by its exponent list inside a base semigroup.
///
/// Exponents are stored deduplicated in lexicographic order; every exponent
/// must be a member of the base semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MonomialIdealRepr", into = "MonomialIdealRepr")]
pub struct MonomialIdeal {
    base: AffineSemigroup,
    exps: Vec<LatticeVec>,
}

#[derive(Serialize, Deserialize)]
struct MonomialIdealRepr {
    base: AffineSemigroup,
    exps: Vec<LatticeVec>,
}

impl From<MonomialIdeal> for MonomialIdealRepr {
    fn from(ideal: MonomialIdeal) -> Self {
        MonomialIdealRepr {
            base: ideal.base,
            exps: ideal.exps,
        }
    }
}

impl TryFrom<MonomialIdealRepr> for MonomialIdeal {
    type Error = Error;

    fn try_from(repr: MonomialIdealRepr) -> Result<MonomialIdeal> {
        MonomialIdeal::try_new(repr.base, repr.exps)
    }
}

impl MonomialIdeal {
    pub fn try_new(base: AffineSemigroup, exps: Vec<LatticeVec>) -> Result<MonomialIdeal> {
        if exps.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        let mut exps = exps;
        exps.sort();
        exps.dedup();
        for &m in &exps {
            if m.0 == i64::MIN || m.1 == i64::MIN {
                return Err(Error::Overflow);
            }
            if !base.member(m) {
                return Err(Error::ExponentOutsideSemigroup(m));
            }
        }
        Ok(MonomialIdeal { base, exps })
    }

    pub fn base(&self) -> &AffineSemigroup {
        &self.base
    }

    pub fn exps(&self) -> &[LatticeVec] {
        &self.exps
    }

    /// Drops every exponent `m` with `m − m′` in the base semigroup for some
    /// other exponent `m′`. Divisibility is a partial order, so the result
    /// does not depend on processing order.
    pub fn minimalize(&self) -> MonomialIdeal {
        let kept: Vec<LatticeVec> = self
            .exps
            .iter()
            .copied()
            .filter(|&m| {
                !self.exps.iter().any(|&m2| {
                    m2 != m
                        && m
                            .checked_sub(m2)
                            .map(|d| self.base.member(d))
                            .unwrap_or(false)
                })
            })
            .collect();
        MonomialIdeal {
            base: self.base.clone(),
            exps: kept,
        }
    }
}

/// Decides whether some `λ ∈ [0, 1]` satisfies both `a1 + λ·b1 ≥ 0` and
/// `a2 + λ·b2 ≥ 0`, exactly.
fn lambda_feasible(a1: i128, b1: i128, a2: i128, b2: i128) -> bool {
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    for (a, b) in [(a1, b1), (a2, b2)] {
        if b == 0 {
            if a < 0 {
                return false;
            }
        } else {
            let bound = BigRational::new(BigInt::from(-a), BigInt::from(b));
            if b > 0 {
                lo = lo.max(bound);
            } else {
                hi = hi.min(bound);
            }
        }
    }
    lo <= hi
}

/// Indices (0-based) of the exponents that are vertices of the Newton
/// polyhedron `𝒩(I) = conv(∪ m_i + σ)`.
///
/// By Carathéodory in the plane, `m_i` fails to be a vertex exactly when it
/// lies in `conv{m_j, m_l} + σ` for some pair `j, l ≠ i` (possibly equal),
/// and each pair reduces to an exact rational feasibility test in one
/// variable.
pub fn newton_vertices(ideal: &MonomialIdeal) -> Result<Vec<usize>> {
    let cone = ideal.base.cone()?;
    let (r1, r2) = (cone.r1(), cone.r2());
    let exps = ideal.exps();
    let k = exps.len();
    let mut vertices = Vec::new();
    'candidates: for i in 0..k {
        for j in 0..k {
            if j == i {
                continue;
            }
            for l in j..k {
                if l == i {
                    continue;
                }
                let dil = exps[i].checked_sub(exps[l])?;
                let djl = exps[j].checked_sub(exps[l])?;
                let a1 = det_wide(r1, dil);
                let b1 = -det_wide(r1, djl);
                let a2 = det_wide(dil, r2);
                let b2 = -det_wide(djl, r2);
                if lambda_feasible(a1, b1, a2, b2) {
                    continue 'candidates;
                }
            }
        }
        vertices.push(i);
    }
    Ok(vertices)
}

/// The chart semigroup `Γ_i = Γ + ℤ₊{m_j − m_i | j ≠ i}`, returned after
/// dropping redundant generators. `i` is 0-based.
///
/// Fails with [`Error::NotPointed`] when the generated cone contains a
/// line, which signals that the chart is not an affine toric surface of the
/// expected kind.
pub fn chart_semigroup(ideal: &MonomialIdeal, i: usize) -> Result<AffineSemigroup> {
    let exps = ideal.exps();
    if i >= exps.len() {
        return Err(Error::InternalMismatch(format!(
            "chart index {i} out of range"
        )));
    }
    let mut gens = ideal.base.gens().to_vec();
    for (j, &m) in exps.iter().enumerate() {
        if j != i {
            gens.push(m.checked_sub(exps[i])?);
        }
    }
    Ok(AffineSemigroup::try_new(gens)?.minimal_generators())
}

/// One affine chart of a blow-up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    /// 1-based index of the vertex exponent this chart belongs to.
    pub vertex: usize,
    pub semigroup: AffineSemigroup,
    pub class: ChartClass,
}

/// Gluing record between two vertex charts: the localizer is the exponent
/// difference `m_j − m_i`, which lives in the `i`-th chart semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    /// 1-based chart indices.
    pub i: usize,
    pub j: usize,
    pub localizer: LatticeVec,
}

/// Chart decomposition of the blow-up along a monomial ideal.
///
/// Indices in this record are 1-based, matching the serialized interface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupResult {
    pub vertex_indices: Vec<usize>,
    pub charts: Vec<Chart>,
    pub gluings: Vec<Gluing>,
}

impl BlowupResult {
    /// Chart classes in vertex order.
    pub fn chart_classes(&self) -> Vec<ChartClass> {
        self.charts.iter().map(|c| c.class).collect()
    }
}

/// Blows up the base semigroup along the ideal: computes the Newton
/// vertices, builds and classifies one chart per vertex, and records all
/// pairwise gluing localizers.
pub fn blowup(ideal: &MonomialIdeal) -> Result<BlowupResult> {
    let vertices = newton_vertices(ideal)?;
    let mut charts = Vec::with_capacity(vertices.len());
    for &i in &vertices {
        let semigroup = chart_semigroup(ideal, i)?;
        let class = semigroup.classify()?;
        charts.push(Chart {
            vertex: i + 1,
            semigroup,
            class,
        });
    }
    let exps = ideal.exps();
    let mut gluings = Vec::new();
    for &i in &vertices {
        for &j in &vertices {
            if i != j {
                gluings.push(Gluing {
                    i: i + 1,
                    j: j + 1,
                    localizer: exps[j].checked_sub(exps[i])?,
                });
            }
        }
    }
    Ok(BlowupResult {
        vertex_indices: vertices.iter().map(|&i| i + 1).collect(),
        charts,
        gluings,
    })
}

/// A fan refining a pointed two-dimensional cone: the ambient rays plus the
/// inserted interior rays, counterclockwise and pairwise non-parallel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Fan2Repr", into = "Fan2Repr")]
pub struct Fan2 {
    ambient: Cone2,
    rays: Vec<LatticeVec>,
}

#[derive(Serialize, Deserialize)]
struct Fan2Repr {
    ambient: Cone2,
    rays: Vec<LatticeVec>,
}

impl From<Fan2> for Fan2Repr {
    fn from(f: Fan2) -> Fan2Repr {
        Fan2Repr {
            ambient: f.ambient,
            rays: f.rays,
        }
    }
}

impl TryFrom<Fan2Repr> for Fan2 {
    type Error = Error;

    fn try_from(repr: Fan2Repr) -> Result<Fan2> {
        Fan2::new(repr.ambient, repr.rays)
    }
}

impl Fan2 {
    pub fn new(ambient: Cone2, rays: Vec<LatticeVec>) -> Result<Fan2> {
        if rays.first() != Some(&ambient.r1()) || rays.last() != Some(&ambient.r2()) {
            return Err(Error::InternalMismatch(
                "fan rays must start and end at the ambient rays".into(),
            ));
        }
        for w in rays.windows(2) {
            if det_wide(w[0], w[1]) <= 0 {
                return Err(Error::InternalMismatch(
                    "fan rays must be strictly counterclockwise".into(),
                ));
            }
        }
        Ok(Fan2 { ambient, rays })
    }

    /// The trivial fan: just the ambient cone.
    pub fn trivial(ambient: Cone2) -> Fan2 {
        Fan2 {
            rays: vec![ambient.r1(), ambient.r2()],
            ambient,
        }
    }

    pub fn ambient(&self) -> &Cone2 {
        &self.ambient
    }

    /// All rays, from the first ambient ray to the last.
    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn interior_rays(&self) -> &[LatticeVec] {
        &self.rays[1..self.rays.len() - 1]
    }

    /// The maximal subcones, counterclockwise.
    pub fn subcones(&self) -> Vec<Cone2> {
        self.rays
            .windows(2)
            .map(|w| Cone2::new(w[0], w[1]).expect("consecutive fan rays are ccw"))
            .collect()
    }

    /// Inserts interior rays coming from the refinement of one subcone,
    /// keeping the list sorted. A ray that is already present is an error:
    /// refinement is strictly monotone.
    pub fn insert_rays(&mut self, new_rays: &[LatticeVec]) -> Result<()> {
        for &r in new_rays {
            if self.rays.contains(&r) {
                return Err(Error::InternalMismatch(format!(
                    "ray {r} inserted twice into the global fan"
                )));
            }
            let pos = self
                .rays
                .iter()
                .position(|&existing| det_wide(r, existing) > 0)
                .ok_or_else(|| {
                    Error::InternalMismatch(format!("ray {r} outside the ambient cone"))
                })?;
            if pos == 0 {
                return Err(Error::InternalMismatch(format!(
                    "ray {r} outside the ambient cone"
                )));
            }
            self.rays.insert(pos, r);
        }
        Ok(())
    }
}

/// Data of the normalized blow-up: the refining fan plus, for each Newton
/// vertex, the 0-based exponent index and its maximal subcone in the fan.
#[derive(Debug, Clone)]
pub struct NormalFanData {
    pub fan: Fan2,
    /// `(exponent index, normal cone)` for every vertex.
    pub vertex_cones: Vec<(usize, Cone2)>,
}

/// Computes the normal fan of the Newton polyhedron, which realizes the
/// normalization of the blow-up as a refinement of the dual cone of the
/// base. Requires the base semigroup to be saturated.
///
/// The maximal subcone paired with vertex `m_i` is the normal cone of that
/// vertex; its dual semigroup equals the saturation of the `i`-th chart
/// semigroup.
pub fn normal_fan_data(ideal: &MonomialIdeal) -> Result<NormalFanData> {
    if !ideal.base.is_saturated()? {
        return Err(Error::NotSaturated);
    }
    let cone = ideal.base.cone()?;
    let ambient = cone.dual()?;
    let (s1, s2) = (ambient.r1(), ambient.r2());

    let vertex_ids = newton_vertices(ideal)?;
    let mut walk: Vec<(usize, LatticeVec)> = vertex_ids
        .iter()
        .map(|&i| (i, ideal.exps()[i]))
        .collect();
    // Boundary order: the s1-functional strictly decreases along the walk
    // away from the first ambient ray, the s2-functional strictly increases.
    walk.sort_by(|&(_, v), &(_, w)| {
        (dot_wide(s1, w), dot_wide(s2, v)).cmp(&(dot_wide(s1, v), dot_wide(s2, w)))
    });

    let mut edge_normals = Vec::with_capacity(walk.len().saturating_sub(1));
    for pair in walk.windows(2) {
        let d = pair[1].1.checked_sub(pair[0].1)?;
        edge_normals.push(primitive(d.rot90_cw()?)?);
    }

    let mut rays = Vec::with_capacity(edge_normals.len() + 2);
    rays.push(s1);
    rays.extend(edge_normals.iter().rev());
    rays.push(s2);
    let fan = Fan2::new(ambient, rays)?;

    let mut vertex_cones = Vec::with_capacity(walk.len());
    for (t, &(idx, _)) in walk.iter().enumerate() {
        let lo = if t == 0 { s2 } else { edge_normals[t - 1] };
        let hi = if t + 1 == walk.len() {
            s1
        } else {
            edge_normals[t]
        };
        // Normal cone of the t-th walk vertex, counterclockwise (hi, lo).
        vertex_cones.push((idx, Cone2::new(hi, lo)?));
    }
    Ok(NormalFanData { fan, vertex_cones })
}

/// The normal fan alone; see [`normal_fan_data`].
pub fn normalized_blowup_fan(ideal: &MonomialIdeal) -> Result<Fan2> {
    Ok(normal_fan_data(ideal)?.fan)
}
