//! Iterated blow-up engine.
//!
//! Starting from an affine toric surface, each round blows up every
//! still-singular chart along an ideal chosen by a selector, replaces
//! non-normal charts by their saturations, and recurses until every chart
//! is smooth or a step budget runs out. Chart cones of the normalized
//! blow-up are subcones of the ambient dual cone in the same lattice, so
//! the interior rays of every step accumulate into one global fan; the
//! exceptional dual graph is read off from that fan and compared against
//! the continued-fraction oracle.

#[cfg(not(target_arch = "wasm32"))]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blowup::{blowup, normal_fan_data, BlowupResult, Fan2, MonomialIdeal};
use crate::error::{Error, Result};
use crate::lattice::{det_wide, hilbert_basis, hj_fractions, LatticeVec, Unimodular};
use crate::matfact::derivation_ideal_an;
use crate::semigroup::{AffineSemigroup, ChartClass};

/// Default bound on the number of simultaneous blow-up rounds.
pub const DEFAULT_MAX_STEPS: u32 = 64;

/// Version tag embedded in serialized traces.
pub const TRACE_SCHEMA_VERSION: u32 = 1;

/// Chooses the blow-up center for each singular chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealSelector {
    /// The derivation ideal of the hypersurface `xz = y^{k+1}`, transported
    /// to the chart coordinates. Applicable only to charts in the A-series
    /// (smooth charts are left alone); anything else is an error.
    AnDerivation,
    /// The maximal monomial ideal: all minimal generators of the chart
    /// semigroup.
    MaximalMonomial,
    /// A caller-supplied ideal, applied to the root chart for a single
    /// round; deeper charts have no transported meaning, so the run stops
    /// after one step and is flagged non-terminated if singular charts
    /// remain.
    Explicit(MonomialIdeal),
}

/// A chart the engine works on: its semigroup and classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartDesc {
    pub semigroup: AffineSemigroup,
    pub class: ChartClass,
}

/// One blow-up of one chart, with the expansions of its singular charts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupStep {
    /// 1-based vertex index in the parent step; absent for the root step.
    pub vertex: Option<usize>,
    pub chart: ChartDesc,
    pub ideal: MonomialIdeal,
    pub result: BlowupResult,
    /// Interior rays this step inserts into the global fan.
    pub new_rays: Vec<LatticeVec>,
    pub children: Vec<BlowupStep>,
}

/// The full history of an iterated blow-up run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionTrace {
    pub schema_version: u32,
    pub root: ChartDesc,
    /// Absent when the root chart is already smooth.
    pub step: Option<BlowupStep>,
    /// Blow-up rounds along the deepest chain.
    pub depth: u32,
    pub global_fan: Fan2,
    /// False when the run stopped at the step budget with singular charts
    /// left over.
    pub terminated: bool,
    /// New interior rays contributed by each simultaneous round.
    pub new_rays_per_round: Vec<usize>,
}

/// Chain dual graph of an exceptional divisor: one vertex per curve with
/// its self-intersection, consecutive curves meeting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub self_intersections: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct DualGraphRepr {
    vertices: Vec<i64>,
    edges: Vec<[usize; 2]>,
}

impl Serialize for DualGraph {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let edges = (1..self.self_intersections.len())
            .map(|i| [i, i + 1])
            .collect();
        DualGraphRepr {
            vertices: self.self_intersections.clone(),
            edges,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DualGraph {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<DualGraph, D::Error> {
        let repr = DualGraphRepr::deserialize(deserializer)?;
        let expected: Vec<[usize; 2]> = (1..repr.vertices.len()).map(|i| [i, i + 1]).collect();
        if repr.edges != expected {
            return Err(serde::de::Error::custom("edges must form the chain"));
        }
        Ok(DualGraph {
            self_intersections: repr.vertices,
        })
    }
}

impl DualGraph {
    pub fn len(&self) -> usize {
        self.self_intersections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.self_intersections.is_empty()
    }

    /// Graphviz rendering of the chain, vertices labeled with
    /// self-intersections.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dual_graph {\n  rankdir=LR;\n  node [shape=circle];\n");
        for (i, s) in self.self_intersections.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"{}\"];\n", i + 1, s));
        }
        for i in 1..self.self_intersections.len() {
            out.push_str(&format!("  v{} -- v{};\n", i, i + 1));
        }
        out.push_str("}\n");
        out
    }
}

/// Minimal resolution chain of the cyclic quotient of type `(n, q)`,
/// straight from the continued fraction. Independent of the blow-up
/// engine.
pub fn hj_oracle(n: i64, q: i64) -> Result<DualGraph> {
    Ok(DualGraph {
        self_intersections: hj_fractions(n, q)?.iter().map(|&b| -b).collect(),
    })
}

/// The derivation ideal transported onto an A-series chart.
///
/// The chart semigroup is saturated with Hilbert basis `[r1, h, r2]`; the
/// lattice map sending `(r1, h)` to `((1,0), (1,1))` carries it onto the
/// standard semigroup `⟨(1,0), (1,1), (k, k+1)⟩`, and the inverse map
/// pulls the standard derivation ideal back to chart coordinates.
fn an_derivation_on_chart(chart: &ChartDesc) -> Result<MonomialIdeal> {
    let k = match chart.class {
        ChartClass::CyclicQuotient(qt) if qt.q == qt.n - 1 => qt.n - 1,
        other => {
            return Err(Error::InternalMismatch(format!(
                "chart classified as `{other}`, outside the A-series"
            )))
        }
    };
    let basis = hilbert_basis(&chart.semigroup.cone()?)?;
    if basis.len() != 3 {
        return Err(Error::InternalMismatch(format!(
            "A-series chart must have 3 semigroup generators, found {}",
            basis.len()
        )));
    }
    let source = Unimodular::from_columns(basis[0], basis[1])?;
    let target = Unimodular::new([[1, 1], [0, 1]])?;
    let to_standard = target.compose(&source.inverse())?;
    let back = to_standard.inverse();
    debug_assert_eq!(
        to_standard.apply(basis[2]).ok(),
        Some(LatticeVec(k, k + 1)),
        "A-series chart must map onto the standard semigroup"
    );
    let standard = derivation_ideal_an(k)?;
    let exps = standard
        .exps()
        .iter()
        .map(|&e| back.apply(e))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::try_new(chart.semigroup.clone(), exps)
}

fn select_ideal(
    selector: &IdealSelector,
    chart: &ChartDesc,
    is_root: bool,
) -> Result<MonomialIdeal> {
    match selector {
        IdealSelector::AnDerivation => an_derivation_on_chart(chart),
        IdealSelector::MaximalMonomial => MonomialIdeal::try_new(
            chart.semigroup.clone(),
            chart.semigroup.minimal_generators().gens().to_vec(),
        ),
        IdealSelector::Explicit(ideal) => {
            debug_assert!(is_root, "explicit ideals never recurse");
            MonomialIdeal::try_new(chart.semigroup.clone(), ideal.exps().to_vec())
        }
    }
}

/// Expands one singular chart: blow up, record the step, recurse on the
/// singular charts. Returns the step and whether the subtree is fully
/// resolved.
fn expand_chart(
    chart: ChartDesc,
    vertex: Option<usize>,
    selector: &IdealSelector,
    remaining: u32,
    is_root: bool,
) -> Result<(BlowupStep, bool)> {
    let ideal = select_ideal(selector, &chart, is_root)?;
    let result = blowup(&ideal)?;
    let fan_data = normal_fan_data(&ideal)?;
    let new_rays = fan_data.fan.interior_rays().to_vec();

    // Saturated chart semigroups of the children, read off the dual side so
    // they stay in the coordinates of the root lattice.
    let mut singular: Vec<(usize, ChartDesc)> = Vec::new();
    for (exp_idx, tau) in &fan_data.vertex_cones {
        let semigroup = AffineSemigroup::try_new(hilbert_basis(&tau.dual()?)?)?;
        let class = semigroup.classify()?;
        if !class.is_smooth() {
            singular.push((exp_idx + 1, ChartDesc { semigroup, class }));
        }
    }
    singular.sort_by_key(|(v, _)| *v);

    let recurse = !matches!(selector, IdealSelector::Explicit(_));
    let (children, complete) = if singular.is_empty() {
        (Vec::new(), true)
    } else if !recurse || remaining <= 1 {
        (Vec::new(), false)
    } else {
        // Sibling charts are independent; the merge order is fixed by the
        // vertex sort above, so results do not depend on the schedule.
        #[cfg(not(target_arch = "wasm32"))]
        let expanded: Vec<(BlowupStep, bool)> = singular
            .into_par_iter()
            .map(|(v, desc)| expand_chart(desc, Some(v), selector, remaining - 1, false))
            .collect::<Result<Vec<_>>>()?;
        #[cfg(target_arch = "wasm32")]
        let expanded: Vec<(BlowupStep, bool)> = singular
            .into_iter()
            .map(|(v, desc)| expand_chart(desc, Some(v), selector, remaining - 1, false))
            .collect::<Result<Vec<_>>>()?;
        let complete = expanded.iter().all(|(_, done)| *done);
        (expanded.into_iter().map(|(s, _)| s).collect(), complete)
    };

    Ok((
        BlowupStep {
            vertex,
            chart,
            ideal,
            result,
            new_rays,
            children,
        },
        complete,
    ))
}

fn tree_depth(step: &BlowupStep) -> u32 {
    1 + step.children.iter().map(tree_depth).max().unwrap_or(0)
}

fn collect_rays(
    step: &BlowupStep,
    round: usize,
    fan: &mut Fan2,
    per_round: &mut Vec<usize>,
) -> Result<()> {
    fan.insert_rays(&step.new_rays)?;
    if per_round.len() <= round {
        per_round.resize(round + 1, 0);
    }
    per_round[round] += step.new_rays.len();
    for child in &step.children {
        collect_rays(child, round + 1, fan, per_round)?;
    }
    Ok(())
}

/// Iterates blow-ups with the given selector starting from `root`, stopping
/// when every chart is smooth or after `max_steps` simultaneous rounds.
/// Hitting the budget returns a partial trace flagged non-terminated, not
/// an error.
pub fn resolve_generic(
    root: &AffineSemigroup,
    selector: &IdealSelector,
    max_steps: u32,
) -> Result<ResolutionTrace> {
    let root_desc = ChartDesc {
        semigroup: root.clone(),
        class: root.classify()?,
    };
    // The engine works on the normalization throughout.
    let work = root.saturation()?;
    let work_class = work.classify()?;
    let ambient = work.cone()?.dual()?;
    let mut fan = Fan2::trivial(ambient);
    let mut per_round = Vec::new();

    let (step, terminated, depth) = if work_class.is_smooth() {
        (None, true, 0)
    } else if max_steps == 0 {
        (None, false, 0)
    } else {
        let (step, complete) = expand_chart(
            ChartDesc {
                semigroup: work,
                class: work_class,
            },
            None,
            selector,
            max_steps,
            true,
        )?;
        let depth = tree_depth(&step);
        collect_rays(&step, 0, &mut fan, &mut per_round)?;
        (Some(step), complete, depth)
    };

    Ok(ResolutionTrace {
        schema_version: TRACE_SCHEMA_VERSION,
        root: root_desc,
        step,
        depth,
        global_fan: fan,
        terminated,
        new_rays_per_round: per_round,
    })
}

/// Resolves the surface `xz = y^{n+1}` by iterated blow-ups of its
/// derivation ideal.
pub fn resolve_an(n: i64) -> Result<ResolutionTrace> {
    let root = AffineSemigroup::gamma_n(n)?;
    resolve_generic(&root, &IdealSelector::AnDerivation, DEFAULT_MAX_STEPS)
}

/// Reads the exceptional chain off the global fan of a finished trace:
/// consecutive rays must be unimodular, and each interior ray `v_i`
/// satisfies `v_{i−1} + v_{i+1} = b_i·v_i` with self-intersection `−b_i`.
pub fn dual_graph(trace: &ResolutionTrace) -> Result<DualGraph> {
    if !trace.terminated {
        return Err(Error::NotResolved);
    }
    let rays = trace.global_fan.rays();
    for w in rays.windows(2) {
        if det_wide(w[0], w[1]) != 1 {
            return Err(Error::NonSmoothFan);
        }
    }
    let mut self_intersections = Vec::with_capacity(rays.len().saturating_sub(2));
    for i in 1..rays.len().saturating_sub(1) {
        let b = i64::try_from(det_wide(rays[i - 1], rays[i + 1])).map_err(|_| Error::Overflow)?;
        let sum = rays[i - 1].checked_add(rays[i + 1])?;
        if sum != rays[i].checked_scale(b)? {
            return Err(Error::InternalMismatch(format!(
                "ray {} violates the chain relation",
                rays[i]
            )));
        }
        self_intersections.push(-b);
    }
    Ok(DualGraph { self_intersections })
}

/// Number of exceptional divisors: interior rays of the global fan.
pub fn divisor_count(trace: &ResolutionTrace) -> usize {
    trace.global_fan.interior_rays().len()
}
