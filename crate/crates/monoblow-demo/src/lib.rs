//! Wasm bindings for the browser demo.
//!
//! Three entry points, each returning a JSON string shaped for drawing:
//! resolving the surface `xz = y^{n+1}`, blowing up a custom monomial
//! ideal, and the matrix-factorization pipeline. Errors come back as
//! `{"error": "..."}` so the page can render them inline.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use monoblow::blowup::{blowup, normal_fan_data, MonomialIdeal};
use monoblow::matfact::{
    build_bcd, check_matrix_factorization, minors_ideal, reduce_monomial_generators, MatP, PolyQ,
    Splitting,
};
use monoblow::resolve::{divisor_count, dual_graph, resolve_an};
use monoblow::semigroup::AffineSemigroup;
use monoblow::LatticeVec;

fn pair(v: LatticeVec) -> [i64; 2] {
    [v.0, v.1]
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| format!(r#"{{"error":"{e}"}}"#))
}

fn err_json(message: impl std::fmt::Display) -> String {
    to_json(&serde_json::json!({ "error": message.to_string() }))
}

#[derive(Serialize)]
struct ResolveView {
    n: i64,
    depth: u32,
    divisors: usize,
    new_rays_per_round: Vec<usize>,
    ambient: [[i64; 2]; 2],
    /// All fan rays after resolution, counterclockwise; the first and last
    /// are the ambient rays.
    rays: Vec<[i64; 2]>,
    /// Rays grouped by the round that inserted them.
    rays_by_round: Vec<Vec<[i64; 2]>>,
    dual_graph: Vec<i64>,
    /// Chart classes along the singular tower, root first.
    tower: Vec<String>,
}

/// Resolve `xz = y^{n+1}` and return the fan, the dual graph, and the
/// singular chart tower.
#[wasm_bindgen]
pub fn resolve_an_demo(n: i64) -> String {
    let trace = match resolve_an(n) {
        Ok(t) => t,
        Err(e) => return err_json(e),
    };
    let graph = match dual_graph(&trace) {
        Ok(g) => g,
        Err(e) => return err_json(e),
    };
    let mut rays_by_round = Vec::new();
    let mut tower = Vec::new();
    let mut cursor = trace.step.as_ref();
    while let Some(step) = cursor {
        rays_by_round.push(step.new_rays.iter().map(|&r| pair(r)).collect());
        tower.push(step.chart.class.to_string());
        cursor = step.children.first();
    }
    let ambient = trace.global_fan.ambient();
    to_json(&ResolveView {
        n,
        depth: trace.depth,
        divisors: divisor_count(&trace),
        new_rays_per_round: trace.new_rays_per_round.clone(),
        ambient: [pair(ambient.r1()), pair(ambient.r2())],
        rays: trace.global_fan.rays().iter().map(|&r| pair(r)).collect(),
        rays_by_round,
        dual_graph: graph.self_intersections,
        tower,
    })
}

#[derive(Serialize)]
struct ChartView {
    vertex: usize,
    class: String,
    gens: Vec<[i64; 2]>,
}

#[derive(Serialize)]
struct BlowupView {
    base_rays: [[i64; 2]; 2],
    exps: Vec<[i64; 2]>,
    vertex_indices: Vec<usize>,
    charts: Vec<ChartView>,
    fan_ambient: Option<[[i64; 2]; 2]>,
    fan_rays: Option<Vec<[i64; 2]>>,
    saturated: bool,
}

/// Blow up a monomial ideal given as JSON arrays of generator and exponent
/// pairs; returns chart data plus the Newton-polygon and fan geometry.
#[wasm_bindgen]
pub fn blowup_demo(semigroup_json: &str, ideal_json: &str) -> String {
    let base: AffineSemigroup = match serde_json::from_str(semigroup_json) {
        Ok(b) => b,
        Err(e) => return err_json(format!("semigroup: {e}")),
    };
    let exps: Vec<LatticeVec> = match serde_json::from_str(ideal_json) {
        Ok(v) => v,
        Err(e) => return err_json(format!("ideal: {e}")),
    };
    let ideal = match MonomialIdeal::try_new(base.clone(), exps) {
        Ok(i) => i,
        Err(e) => return err_json(e),
    };
    let cone = match base.cone() {
        Ok(c) => c,
        Err(e) => return err_json(e),
    };
    let result = match blowup(&ideal) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    let saturated = base.is_saturated().unwrap_or(false);
    let (fan_ambient, fan_rays) = if saturated {
        match normal_fan_data(&ideal) {
            Ok(data) => (
                Some([pair(data.fan.ambient().r1()), pair(data.fan.ambient().r2())]),
                Some(data.fan.rays().iter().map(|&r| pair(r)).collect()),
            ),
            Err(e) => return err_json(e),
        }
    } else {
        (None, None)
    };
    to_json(&BlowupView {
        base_rays: [pair(cone.r1()), pair(cone.r2())],
        exps: ideal.exps().iter().map(|&m| pair(m)).collect(),
        vertex_indices: result.vertex_indices.clone(),
        charts: result
            .charts
            .iter()
            .map(|c| ChartView {
                vertex: c.vertex,
                class: c.class.to_string(),
                gens: c.semigroup.gens().iter().map(|&g| pair(g)).collect(),
            })
            .collect(),
        fan_ambient,
        fan_rays,
        saturated,
    })
}

#[derive(Serialize)]
struct MatfactView {
    f: String,
    b: Vec<Vec<String>>,
    c: Vec<Vec<String>>,
    d: Vec<Vec<String>>,
    factorization: bool,
    minors: Vec<String>,
}

fn matrix_strings(m: &MatP) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

/// Run the matrix-factorization pipeline on a splitting given in the
/// plain-text polynomial format.
#[wasm_bindgen]
pub fn matfact_demo(f: &str, fx: &str, fy: &str, fz: &str, col1: usize, col2: usize) -> String {
    let parse = |text: &str| text.parse::<PolyQ>();
    let (f, fx, fy, fz) = match (parse(f), parse(fx), parse(fy), parse(fz)) {
        (Ok(f), Ok(fx), Ok(fy), Ok(fz)) => (f, fx, fy, fz),
        _ => return err_json("could not parse a polynomial; use the format `x*z - y^4`"),
    };
    let splitting = match Splitting::new(f, fx, fy, fz) {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    let (b, c, d) = build_bcd(&splitting);
    let factorization = match check_matrix_factorization(&c, &d, &splitting.f) {
        Ok(ok) => ok,
        Err(e) => return err_json(e),
    };
    let minors = match minors_ideal(&d, col1, col2) {
        Ok(m) => reduce_monomial_generators(&m),
        Err(e) => return err_json(e),
    };
    to_json(&MatfactView {
        f: splitting.f.to_string(),
        b: matrix_strings(&b),
        c: matrix_strings(&c),
        d: matrix_strings(&d),
        factorization,
        minors: minors.iter().map(|m| m.to_string()).collect(),
    })
}
