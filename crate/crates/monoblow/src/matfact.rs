//! Exact sparse polynomial arithmetic in `ℚ[x, y, z]` and the
//! matrix-factorization pipeline for hypersurface singularities.
//!
//! From a splitting `f = x·fx + y·fy + z·fz` we build the presentation
//! matrices of the minimal free resolution of the residue field over the
//! hypersurface ring; the pair `(C, D)` is a matrix factorization of `f`,
//! i.e. `CD = DC = f·Id₄`. The 2×2 minors of two columns of `D` of maximal
//! rank cut out the blow-up center of the module of derivations; for the
//! surface `xz = y^{n+1}` a toric parametrization turns those minors into a
//! monomial ideal on the corresponding semigroup.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::blowup::MonomialIdeal;
use crate::error::{Error, Result};
use crate::lattice::LatticeVec;
use crate::semigroup::AffineSemigroup;

/// Exponent triple of a monomial `x^a y^b z^c`, ordered by graded
/// lexicographic order with `x > y > z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mono {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { x: 0, y: 0, z: 0 };

    pub fn degree(&self) -> u64 {
        self.x as u64 + self.y as u64 + self.z as u64
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono {
            x: self.x + other.x,
            y: self.y + other.y,
            z: self.z + other.z,
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.x, self.y, self.z).cmp(&(
            other.degree(),
            other.x,
            other.y,
            other.z,
        ))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial over ℚ in three variables, kept in canonical form:
/// no zero coefficients, terms ordered by the monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyQ {
    terms: BTreeMap<Mono, BigRational>,
}

impl PolyQ {
    pub fn zero() -> PolyQ {
        PolyQ::default()
    }

    pub fn one() -> PolyQ {
        PolyQ::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> PolyQ {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::ONE, c);
        }
        PolyQ { terms }
    }

    pub fn monomial(c: BigRational, m: Mono) -> PolyQ {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PolyQ { terms }
    }

    pub fn var_x() -> PolyQ {
        PolyQ::monomial(BigRational::one(), Mono { x: 1, y: 0, z: 0 })
    }

    pub fn var_y() -> PolyQ {
        PolyQ::monomial(BigRational::one(), Mono { x: 0, y: 1, z: 0 })
    }

    pub fn var_z() -> PolyQ {
        PolyQ::monomial(BigRational::one(), Mono { x: 0, y: 0, z: 1 })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest term in the monomial order.
    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, rhs: &PolyQ) -> PolyQ {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(*m).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        PolyQ { terms }
    }

    pub fn neg(&self) -> PolyQ {
        PolyQ {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, rhs: &PolyQ) -> PolyQ {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &PolyQ) -> PolyQ {
        let mut terms: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2);
                let entry = terms.entry(m).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
                if entry.is_zero() {
                    terms.remove(&m);
                }
            }
        }
        PolyQ { terms }
    }

    pub fn scale(&self, c: &BigRational) -> PolyQ {
        if c.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> PolyQ {
        let mut acc = PolyQ::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Flips the sign so the leading coefficient is positive; zero stays
    /// zero.
    pub fn normalize_sign(&self) -> PolyQ {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Total order on canonical forms, for deterministic output.
    pub fn canonical_cmp(&self, other: &PolyQ) -> std::cmp::Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return std::cmp::Ordering::Equal,
                (None, Some(_)) => return std::cmp::Ordering::Less,
                (Some(_), None) => return std::cmp::Ordering::Greater,
                (Some((m1, c1)), Some((m2, c2))) => {
                    let ord = m1.cmp(m2).then_with(|| c1.cmp(c2));
                    if ord != std::cmp::Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (count, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if count == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || *m == Mono::ONE {
                if abs.denom().is_one() {
                    parts.push(abs.numer().to_string());
                } else {
                    parts.push(format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            for (var, e) in [("x", m.x), ("y", m.y), ("z", m.z)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for PolyQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<PolyQ> {
        parse_poly(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Var(u8),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n = digits
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(e.to_string()))?;
                tokens.push(Token::Num(n));
            }
            'x' | 'y' | 'z' => {
                tokens.push(Token::Var(ch as u8));
                chars.next();
            }
            '+' => {
                tokens.push(Token::Plus);
                chars.next();
            }
            '-' => {
                tokens.push(Token::Minus);
                chars.next();
            }
            '*' => {
                tokens.push(Token::Star);
                chars.next();
            }
            '^' => {
                tokens.push(Token::Caret);
                chars.next();
            }
            '/' => {
                tokens.push(Token::Slash);
                chars.next();
            }
            other => {
                return Err(Error::Parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(tokens)
}

/// Parses the plain-text polynomial format: signed rational coefficients,
/// `x^a*y^b*z^c` monomials, `+`/`-` separators (e.g. `x*z - y^4`).
fn parse_poly(s: &str) -> Result<PolyQ> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut result = PolyQ::zero();
    let mut pos = 0;
    while pos < tokens.len() {
        let mut sign = BigRational::one();
        while let Some(tok) = tokens.get(pos) {
            match tok {
                Token::Minus => {
                    sign = -sign;
                    pos += 1;
                }
                Token::Plus => {
                    pos += 1;
                }
                _ => break,
            }
        }
        let (term, next) = parse_term(&tokens, pos)?;
        result = result.add(&term.scale(&sign));
        pos = next;
        match tokens.get(pos) {
            None => break,
            Some(Token::Plus) | Some(Token::Minus) => {}
            Some(t) => {
                return Err(Error::Parse(format!("unexpected token {t:?}")));
            }
        }
    }
    Ok(result)
}

fn parse_term(tokens: &[Token], mut pos: usize) -> Result<(PolyQ, usize)> {
    let mut acc = PolyQ::one();
    loop {
        let (factor, next) = parse_factor(tokens, pos)?;
        acc = acc.mul(&factor);
        pos = next;
        if tokens.get(pos) == Some(&Token::Star) {
            pos += 1;
        } else {
            return Ok((acc, pos));
        }
    }
}

fn parse_factor(tokens: &[Token], pos: usize) -> Result<(PolyQ, usize)> {
    match tokens.get(pos) {
        Some(Token::Num(n)) => {
            if tokens.get(pos + 1) == Some(&Token::Slash) {
                match tokens.get(pos + 2) {
                    Some(Token::Num(d)) if !d.is_zero() => Ok((
                        PolyQ::constant(BigRational::new(n.clone(), d.clone())),
                        pos + 3,
                    )),
                    _ => Err(Error::Parse("expected nonzero denominator".into())),
                }
            } else {
                Ok((PolyQ::constant(BigRational::from(n.clone())), pos + 1))
            }
        }
        Some(Token::Var(v)) => {
            let base = match v {
                b'x' => PolyQ::var_x(),
                b'y' => PolyQ::var_y(),
                _ => PolyQ::var_z(),
            };
            if tokens.get(pos + 1) == Some(&Token::Caret) {
                match tokens.get(pos + 2) {
                    Some(Token::Num(e)) => {
                        let e = u32::try_from(e.clone())
                            .map_err(|_| Error::Parse("exponent out of range".into()))?;
                        Ok((base.pow(e), pos + 3))
                    }
                    _ => Err(Error::Parse("expected exponent after `^`".into())),
                }
            } else {
                Ok((base, pos + 1))
            }
        }
        other => Err(Error::Parse(format!("expected factor, found {other:?}"))),
    }
}

/// A verified splitting `f = x·fx + y·fy + z·fz`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub f: PolyQ,
    pub fx: PolyQ,
    pub fy: PolyQ,
    pub fz: PolyQ,
}

impl Splitting {
    pub fn new(f: PolyQ, fx: PolyQ, fy: PolyQ, fz: PolyQ) -> Result<Splitting> {
        let recombined = PolyQ::var_x()
            .mul(&fx)
            .add(&PolyQ::var_y().mul(&fy))
            .add(&PolyQ::var_z().mul(&fz));
        if recombined != f {
            return Err(Error::InvalidSplitting);
        }
        Ok(Splitting { f, fx, fy, fz })
    }

    /// The splitting `(0, −yⁿ, x)` of `f = xz − y^{n+1}`.
    pub fn hypersurface_an(n: u32) -> Splitting {
        let f = PolyQ::var_x()
            .mul(&PolyQ::var_z())
            .sub(&PolyQ::var_y().pow(n + 1));
        Splitting::new(
            f,
            PolyQ::zero(),
            PolyQ::var_y().pow(n).neg(),
            PolyQ::var_x(),
        )
        .expect("splitting identity holds by construction")
    }
}

/// A dense matrix of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatP {
    rows: usize,
    cols: usize,
    entries: Vec<PolyQ>,
}

impl MatP {
    pub fn from_rows(rows: Vec<Vec<PolyQ>>) -> Result<MatP> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if nrows == 0 || ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged or empty row list".into()));
        }
        Ok(MatP {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> MatP {
        let mut entries = vec![PolyQ::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = PolyQ::one();
        }
        MatP {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &PolyQ {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: PolyQ) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn mul(&self, rhs: &MatP) -> Result<MatP> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = vec![PolyQ::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = PolyQ::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(rhs.get(k, j)));
                }
                entries[i * rhs.cols + j] = acc;
            }
        }
        Ok(MatP {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        })
    }

    pub fn scale_poly(&self, f: &PolyQ) -> MatP {
        MatP {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(f)).collect(),
        }
    }
}

impl fmt::Display for MatP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// The first presentation matrix `(x, y, z)ᵗ` of the residue field.
pub fn build_a() -> MatP {
    MatP::from_rows(vec![
        vec![PolyQ::var_x()],
        vec![PolyQ::var_y()],
        vec![PolyQ::var_z()],
    ])
    .expect("fixed shape")
}

/// Builds the matrices `B` (4×3), `C` (4×4) and `D` (4×4) of the minimal
/// free resolution of the residue field attached to a splitting of `f`.
/// The pair `(C, D)` is a matrix factorization of `f`.
pub fn build_bcd(s: &Splitting) -> (MatP, MatP, MatP) {
    let x = PolyQ::var_x();
    let y = PolyQ::var_y();
    let z = PolyQ::var_z();
    let o = PolyQ::zero();
    let (fx, fy, fz) = (&s.fx, &s.fy, &s.fz);
    let b = MatP::from_rows(vec![
        vec![o.clone(), z.neg(), y.clone()],
        vec![z.clone(), o.clone(), x.neg()],
        vec![y.neg(), x.clone(), o.clone()],
        vec![fx.clone(), fy.clone(), fz.clone()],
    ])
    .expect("fixed shape");
    let c = MatP::from_rows(vec![
        vec![o.clone(), fz.clone(), fy.neg(), x.clone()],
        vec![fz.neg(), o.clone(), fx.clone(), y.clone()],
        vec![fy.clone(), fx.neg(), o.clone(), z.clone()],
        vec![x.neg(), y.neg(), z.neg(), o.clone()],
    ])
    .expect("fixed shape");
    let d = MatP::from_rows(vec![
        vec![o.clone(), z.neg(), y.clone(), fx.neg()],
        vec![z.clone(), o.clone(), x.neg(), fy.neg()],
        vec![y.neg(), x.clone(), o.clone(), fz.neg()],
        vec![fx.clone(), fy.clone(), fz.clone(), o.clone()],
    ])
    .expect("fixed shape");
    (b, c, d)
}

/// Exact test of `C·D = D·C = f·Id₄`.
pub fn check_matrix_factorization(c: &MatP, d: &MatP, f: &PolyQ) -> Result<bool> {
    if c.rows() != 4 || c.cols() != 4 || d.rows() != 4 || d.cols() != 4 {
        return Err(Error::Dimension(
            "matrix factorization check needs 4x4 matrices".into(),
        ));
    }
    let expected = MatP::identity(4).scale_poly(f);
    Ok(c.mul(d)? == expected && d.mul(c)? == expected)
}

/// The 2×2 minors of the two selected columns (1-based); zero minors are
/// dropped, signs normalized so leading coefficients are positive, and
/// duplicates merged.
pub fn minors_ideal(d: &MatP, col1: usize, col2: usize) -> Result<Vec<PolyQ>> {
    if col1 == col2 || col1 == 0 || col2 == 0 || col1 > d.cols() || col2 > d.cols() {
        return Err(Error::InvalidColumns(col1, col2));
    }
    let (c1, c2) = (col1 - 1, col2 - 1);
    let mut minors = Vec::new();
    for i in 0..d.rows() {
        for j in i + 1..d.rows() {
            let m = d
                .get(i, c1)
                .mul(d.get(j, c2))
                .sub(&d.get(i, c2).mul(d.get(j, c1)));
            if !m.is_zero() {
                minors.push(m.normalize_sign());
            }
        }
    }
    minors.sort_by(|a, b| a.canonical_cmp(b));
    minors.dedup();
    if minors.is_empty() {
        return Err(Error::AllZeroMinors);
    }
    Ok(minors)
}

/// When every generator is a single term, drops the ones whose monomial is
/// a proper multiple of another generator's monomial; returns the input
/// unchanged otherwise (divisibility pruning is only defined for monomial
/// generators).
pub fn reduce_monomial_generators(gens: &[PolyQ]) -> Vec<PolyQ> {
    let monos: Option<Vec<Mono>> = gens
        .iter()
        .map(|g| {
            if g.num_terms() == 1 {
                g.leading().map(|(m, _)| *m)
            } else {
                None
            }
        })
        .collect();
    let Some(monos) = monos else {
        return gens.to_vec();
    };
    let divides = |a: &Mono, b: &Mono| a.x <= b.x && a.y <= b.y && a.z <= b.z;
    gens.iter()
        .enumerate()
        .filter(|(i, _)| {
            !monos.iter().enumerate().any(|(j, mj)| {
                j != *i && divides(mj, &monos[*i]) && (*mj != monos[*i] || j < *i)
            })
        })
        .map(|(_, g)| g.clone())
        .collect()
}

/// Exponent images of the three coordinates under a monomial
/// parametrization of a toric surface: `x ↦ t^{img_x}` and so on, with
/// vector exponents in the character lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToricParam {
    pub img_x: LatticeVec,
    pub img_y: LatticeVec,
    pub img_z: LatticeVec,
}

impl ToricParam {
    /// The parametrization whose coordinate images generate the semigroup
    /// `⟨(1,0), (1,1), (n,n+1)⟩`.
    pub fn gamma_n(n: i64) -> ToricParam {
        ToricParam {
            img_x: LatticeVec(1, 0),
            img_y: LatticeVec(1, 1),
            img_z: LatticeVec(n, n + 1),
        }
    }
}

fn image_exponent(p: &ToricParam, m: &Mono) -> Result<LatticeVec> {
    let scaled = |img: LatticeVec, e: u32| img.checked_scale(e as i64);
    scaled(p.img_x, m.x)?
        .checked_add(scaled(p.img_y, m.y)?)?
        .checked_add(scaled(p.img_z, m.z)?)
}

/// Pushes polynomial generators through a toric parametrization, requiring
/// each image to collapse to a single monomial, and returns the resulting
/// exponents as a minimalized monomial ideal over `s`.
pub fn monomialize(gens: &[PolyQ], p: &ToricParam, s: &AffineSemigroup) -> Result<MonomialIdeal> {
    for img in [p.img_x, p.img_y, p.img_z] {
        if !s.member(img) {
            return Err(Error::ExponentOutsideSemigroup(img));
        }
    }
    let mut exps = Vec::with_capacity(gens.len());
    for g in gens {
        let mut image: BTreeMap<LatticeVec, BigRational> = BTreeMap::new();
        for (m, c) in g.terms() {
            let e = image_exponent(p, m)?;
            let entry = image.entry(e).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                image.remove(&e);
            }
        }
        if image.len() != 1 {
            return Err(Error::NotMonomial(g.to_string()));
        }
        exps.push(*image.keys().next().expect("checked length"));
    }
    Ok(MonomialIdeal::try_new(s.clone(), exps)?.minimalize())
}

/// The full derivation-ideal pipeline for the surface `xz = y^{n+1}`:
/// splitting, presentation matrices, minors of columns 3 and 4, and
/// monomialization over `⟨(1,0), (1,1), (n,n+1)⟩`.
pub fn derivation_ideal_an(n: i64) -> Result<MonomialIdeal> {
    if n < 1 {
        return Err(Error::InvalidQuotient { n, q: 0 });
    }
    let exponent = u32::try_from(n).map_err(|_| Error::Overflow)?;
    let s = Splitting::hypersurface_an(exponent);
    let (_, c, d) = build_bcd(&s);
    if !check_matrix_factorization(&c, &d, &s.f)? {
        return Err(Error::InternalMismatch(
            "matrix factorization identity failed".into(),
        ));
    }
    let minors = minors_ideal(&d, 3, 4)?;
    let base = AffineSemigroup::gamma_n(n)?;
    monomialize(&minors, &ToricParam::gamma_n(n), &base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyQ {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f = PolyQ::var_x()
            .mul(&PolyQ::var_z())
            .add(&PolyQ::var_y().pow(3).scale(&BigRational::from(BigInt::from(-1))));
        assert_eq!(f, p("x*z - y^3"));

        let q = p("2*x^2 - y");
        assert_eq!(q.add(&PolyQ::zero()), q);

        assert_eq!(p("x + y").mul(&p("x - y")), p("x^2 - y^2"));
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in [
            "0",
            "1",
            "-1",
            "x",
            "x*z - y^4",
            "-y^3",
            "3/2*x^2*z - 1/3",
            "x^2 + y^2 + z^2",
            "2*x*y*z + 5",
        ] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q, "round trip failed for `{s}`");
        }
        // Terms print in descending monomial order, graded lex.
        assert_eq!(p("x*z-y^4").to_string(), "-y^4 + x*z");
        assert_eq!(p("x^2 + x*y").to_string(), "x^2 + x*y");
        assert_eq!(p("  - y ^ 3 ").to_string(), "-y^3");
        assert!(" ".parse::<PolyQ>().is_err());
        assert!("x + @".parse::<PolyQ>().is_err());
        assert!("1/0".parse::<PolyQ>().is_err());
    }

    #[test]
    fn leading_term_order() {
        // Graded lex with x > y > z.
        let q = p("z^3 + x*y + y^2 + x");
        assert_eq!(q.leading().unwrap().0, &Mono { x: 0, y: 0, z: 3 });
        let q = p("x*y + y^2");
        assert_eq!(q.leading().unwrap().0, &Mono { x: 1, y: 1, z: 0 });
    }

    #[test]
    fn splitting_validation() {
        assert!(Splitting::new(p("x*z - y^2"), p("x"), p("0"), p("0")).is_err());
        let s = Splitting::new(p("x^2 + y^2 + z^2"), p("x"), p("y"), p("z")).unwrap();
        assert_eq!(s.f, p("x^2 + y^2 + z^2"));
    }

    #[test]
    fn presentation_matrix_entries() {
        let s = Splitting::hypersurface_an(3);
        let (_, _, d) = build_bcd(&s);
        assert_eq!(d.get(0, 3), &PolyQ::zero());
        assert_eq!(d.get(1, 3), &p("y^3"));
        assert_eq!(d.get(2, 3), &p("-x"));
        assert_eq!(d.get(3, 1), &p("-y^3"));
        // Skew symmetry of the upper-left 3x3 block.
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.get(i, j), &d.get(j, i).neg());
            }
        }
    }

    #[test]
    fn factorization_holds_for_an_family() {
        for n in 1..=5 {
            let s = Splitting::hypersurface_an(n);
            let (_, c, d) = build_bcd(&s);
            assert!(check_matrix_factorization(&c, &d, &s.f).unwrap(), "n={n}");
        }
    }

    #[test]
    fn factorization_trivial_and_perturbed() {
        let id = MatP::identity(4);
        assert!(check_matrix_factorization(&id, &id, &PolyQ::one()).unwrap());

        let s = Splitting::hypersurface_an(2);
        let (_, c, d) = build_bcd(&s);
        let mut c_bad = c.clone();
        c_bad.set(0, 0, c.get(0, 0).add(&PolyQ::one()));
        assert!(!check_matrix_factorization(&c_bad, &d, &s.f).unwrap());
    }

    #[test]
    fn resolution_complex_identities() {
        let s = Splitting::new(p("x^2 + y^2 + z^2"), p("x"), p("y"), p("z")).unwrap();
        let (b, c, _) = build_bcd(&s);
        // C·B = f · (identity stacked over a zero row), B·A = (0,0,0,f)ᵗ.
        let cb = c.mul(&b).unwrap();
        let expected = MatP::from_rows(vec![
            vec![PolyQ::one(), PolyQ::zero(), PolyQ::zero()],
            vec![PolyQ::zero(), PolyQ::one(), PolyQ::zero()],
            vec![PolyQ::zero(), PolyQ::zero(), PolyQ::one()],
            vec![PolyQ::zero(), PolyQ::zero(), PolyQ::zero()],
        ])
        .unwrap()
        .scale_poly(&s.f);
        assert_eq!(cb, expected);

        let ba = b.mul(&build_a()).unwrap();
        let expected = MatP::from_rows(vec![
            vec![PolyQ::zero()],
            vec![PolyQ::zero()],
            vec![PolyQ::zero()],
            vec![s.f.clone()],
        ])
        .unwrap();
        assert_eq!(ba, expected);
    }

    #[test]
    fn minors_of_an_columns() {
        let s = Splitting::hypersurface_an(4);
        let (_, _, d) = build_bcd(&s);
        let minors = minors_ideal(&d, 3, 4).unwrap();
        let mut expected = vec![p("y^5"), p("x*y"), p("x^2"), p("x*y^4")];
        expected.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(minors, expected);

        assert_eq!(minors_ideal(&d, 1, 1), Err(Error::InvalidColumns(1, 1)));
        assert_eq!(minors_ideal(&d, 0, 2), Err(Error::InvalidColumns(0, 2)));

        let zeros = MatP::from_rows(vec![vec![PolyQ::zero(); 2]; 4]).unwrap();
        assert_eq!(minors_ideal(&zeros, 1, 2), Err(Error::AllZeroMinors));
    }

    #[test]
    fn monomialize_examples() {
        let base = AffineSemigroup::gamma_n(4).unwrap();
        let param = ToricParam::gamma_n(4);
        let gens = vec![p("y^5"), p("x*y"), p("x^2"), p("x*y^4")];
        let ideal = monomialize(&gens, &param, &base).unwrap();
        assert_eq!(
            ideal.exps(),
            &[LatticeVec(2, 0), LatticeVec(2, 1), LatticeVec(5, 5)]
        );

        let single = monomialize(&[p("x")], &param, &base).unwrap();
        assert_eq!(single.exps(), &[LatticeVec(1, 0)]);

        assert_eq!(
            monomialize(&[p("x + y")], &param, &base),
            Err(Error::NotMonomial("x + y".into()))
        );
    }

    #[test]
    fn derivation_ideal_closed_form() {
        for n in [1i64, 2, 7] {
            let ideal = derivation_ideal_an(n).unwrap();
            assert_eq!(
                ideal.exps(),
                &[
                    LatticeVec(2, 0),
                    LatticeVec(2, 1),
                    LatticeVec(n + 1, n + 1)
                ],
                "n={n}"
            );
        }
        assert!(derivation_ideal_an(0).is_err());
    }

    #[test]
    fn monomial_reduction() {
        let gens = vec![p("y^4"), p("x*y"), p("x^2"), p("x*y^3")];
        let reduced = reduce_monomial_generators(&gens);
        assert_eq!(reduced, vec![p("y^4"), p("x*y"), p("x^2")]);
        // Non-monomial input passes through untouched.
        let mixed = vec![p("x + y"), p("x^2")];
        assert_eq!(reduce_monomial_generators(&mixed), mixed);
        // Equal monomials up to scale keep exactly one representative.
        let dup = vec![p("x^2"), p("2*x^2")];
        assert_eq!(reduce_monomial_generators(&dup), vec![p("x^2")]);
    }

    #[test]
    fn minimalization_is_order_independent() {
        // The same generating set in several orders must give one result.
        let base = AffineSemigroup::gamma_n(3).unwrap();
        let param = ToricParam::gamma_n(3);
        let mut gens = vec![p("y^4"), p("x*y"), p("x^2"), p("x*y^3")];
        let expected = monomialize(&gens, &param, &base).unwrap();
        for _ in 0..8 {
            gens.rotate_left(1);
            gens.swap(0, 2);
            let got = monomialize(&gens, &param, &base).unwrap();
            assert_eq!(got, expected);
        }
    }
}
