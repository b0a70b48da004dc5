//! Shared brute-force oracles, kept independent of the implementation
//! paths they check.
#![allow(dead_code)]

use monoblow::blowup::MonomialIdeal;
use monoblow::lattice::{cone_contains, det_wide, dot_wide, Cone2, LatticeVec};
use monoblow::semigroup::AffineSemigroup;
use rand::Rng;

/// Hilbert basis by exhaustive enumeration: all nonzero lattice points of
/// the closed fundamental parallelepiped that are not a sum of two nonzero
/// cone points. Decompositions of such points never leave the region, so
/// the filter is complete.
pub fn hilbert_oracle(c: &Cone2) -> Vec<LatticeVec> {
    let (r1, r2) = (c.r1(), c.r2());
    let n = det_wide(r1, r2);
    let xs = [0, r1.0, r2.0, r1.0 + r2.0];
    let ys = [0, r1.1, r2.1, r1.1 + r2.1];
    let (x_lo, x_hi) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y_lo, y_hi) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());

    let mut region = Vec::new();
    for x in x_lo..=x_hi {
        for y in y_lo..=y_hi {
            let v = LatticeVec(x, y);
            if v.is_zero() {
                continue;
            }
            let lam = det_wide(v, r2);
            let mu = det_wide(r1, v);
            if (0..=n).contains(&lam) && (0..=n).contains(&mu) {
                region.push(v);
            }
        }
    }
    let mut basis: Vec<LatticeVec> = region
        .iter()
        .copied()
        .filter(|&h| {
            !region.iter().any(|&u| {
                let rest = LatticeVec(h.0 - u.0, h.1 - u.1);
                !rest.is_zero() && cone_contains(c, rest)
            })
        })
        .collect();
    monoblow::lattice::sort_ccw(&mut basis);
    basis
}

/// Newton-polyhedron vertices by exhaustive search over supporting
/// functionals.
///
/// The boundary rays of every vertex normal cone are normals to edges of
/// the polyhedron, whose directions are exponent differences or ambient
/// rays; the candidate set below contains those rays and all their pairwise
/// sums, hence an interior functional of every vertex normal cone. A
/// functional strictly positive on the cone with a unique minimizing
/// exponent certifies a vertex.
pub fn newton_vertex_oracle(ideal: &MonomialIdeal) -> Vec<usize> {
    let cone = ideal.base().cone().unwrap();
    let dual = cone.dual().unwrap();
    let exps = ideal.exps();

    let mut dirs = vec![dual.r1(), dual.r2()];
    for (j, &mj) in exps.iter().enumerate() {
        for &ml in exps.iter().skip(j + 1) {
            let d = LatticeVec(mj.0 - ml.0, mj.1 - ml.1);
            dirs.push(LatticeVec(-d.1, d.0));
            dirs.push(LatticeVec(d.1, -d.0));
        }
    }
    let mut candidates = dirs.clone();
    for &a in &dirs {
        for &b in &dirs {
            candidates.push(LatticeVec(a.0 + b.0, a.1 + b.1));
        }
    }

    let mut vertices = vec![false; exps.len()];
    for &phi in &candidates {
        if dot_wide(phi, cone.r1()) <= 0 || dot_wide(phi, cone.r2()) <= 0 {
            continue;
        }
        let values: Vec<i128> = exps.iter().map(|&m| dot_wide(phi, m)).collect();
        let min = values.iter().min().unwrap();
        let hits: Vec<usize> = (0..exps.len()).filter(|&i| values[i] == *min).collect();
        if hits.len() == 1 {
            vertices[hits[0]] = true;
        }
    }
    (0..exps.len()).filter(|&i| vertices[i]).collect()
}

/// Membership by exhaustive coefficient enumeration with an explicit cap
/// on every coefficient. The cap is sound whenever it dominates the weight
/// of `v` under a functional that is at least 1 on each generator.
pub fn member_oracle(gens: &[LatticeVec], v: LatticeVec, max_coeff: i64) -> bool {
    fn search(gens: &[LatticeVec], target: LatticeVec, max_coeff: i64) -> bool {
        if target.is_zero() {
            return true;
        }
        let Some((&g, rest)) = gens.split_first() else {
            return false;
        };
        (0..=max_coeff).any(|c| {
            let rem = LatticeVec(target.0 - c * g.0, target.1 - c * g.1);
            search(rest, rem, max_coeff)
        })
    }
    search(gens, v, max_coeff)
}

/// A random matrix in GL(2, ℤ) with entries in [-5, 5].
pub fn random_unimodular<R: Rng>(rng: &mut R) -> monoblow::lattice::Unimodular {
    loop {
        let m = [
            [rng.gen_range(-5..=5), rng.gen_range(-5..=5)],
            [rng.gen_range(-5..=5), rng.gen_range(-5..=5)],
        ];
        let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if d == 1 || d == -1 {
            return monoblow::lattice::Unimodular::new(m).unwrap();
        }
    }
}

/// A random pointed full-dimensional base semigroup with small coordinates.
pub fn random_base<R: Rng>(rng: &mut R) -> AffineSemigroup {
    loop {
        let k = rng.gen_range(2..=4);
        let gens: Vec<LatticeVec> = (0..k)
            .map(|_| LatticeVec(rng.gen_range(-4..=4), rng.gen_range(-4..=4)))
            .collect();
        if gens.iter().any(|g| g.is_zero()) {
            continue;
        }
        match AffineSemigroup::try_new(gens) {
            Ok(s) if s.cone().is_ok() => return s,
            _ => continue,
        }
    }
}

/// A random monomial ideal over `base` with at most `max_k` exponents of
/// coordinates at most 10 in absolute value. Exponents are built as small
/// combinations of the generators, so membership holds by construction.
pub fn random_ideal<R: Rng>(rng: &mut R, base: &AffineSemigroup, max_k: usize) -> MonomialIdeal {
    let gens = base.gens();
    let mut exps = Vec::new();
    let mut attempts = 0;
    let k = rng.gen_range(1..=max_k);
    while exps.len() < k && attempts < 200 {
        attempts += 1;
        let mut m = LatticeVec(0, 0);
        for &g in gens {
            let c = rng.gen_range(0..=2i64);
            m = LatticeVec(m.0 + c * g.0, m.1 + c * g.1);
        }
        if !m.is_zero() && m.0.abs() <= 10 && m.1.abs() <= 10 {
            exps.push(m);
        }
    }
    if exps.is_empty() {
        exps.push(*base.gens().first().unwrap());
    }
    MonomialIdeal::try_new(base.clone(), exps).unwrap()
}
