//! Homomorphisms out of finitely presented groups: abelianizations into
//! free abelian groups and matrix representations over Laurent rings.
//!
//! Representation file format:
//!
//! ```text
//! # comment
//! field -3          # optional, quadratic field Q(√d) used by w(a,b)
//! vars t            # optional, Laurent variables
//! dim 2
//! a:
//! 1, 1
//! 0, 1
//! b:
//! 1, 0
//! w(1/2,-1/2), 1
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{
    parse_poly_in, AlgebraError, Coeff, LaurentPoly, RingMatrix, Vars, DEFAULT_FIELD,
};
use crate::diagrams::{VirtualDiagram, EXTRA_GENERATOR};
use crate::groups::{Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("representation file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("generator '{0}' has no image")]
    MissingGenerator(String),
    #[error("image of '{gen}' is not invertible (determinant {det})")]
    NotInvertible { gen: String, det: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("presentation has no abelianization onto Z: {0}")]
    NoAbelianization(String),
}

/// Homomorphism onto a free abelian group `⟨vars⟩`, stored as exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    vars: Vars,
    images: BTreeMap<String, Vec<i64>>,
}

impl Abelianization {
    pub fn new(vars: Vars, images: BTreeMap<String, Vec<i64>>) -> Result<Self, RepError> {
        if let Some((g, _)) = images.iter().find(|(_, v)| v.len() != vars.len()) {
            return Err(RepError::Dimension(format!("image of '{g}' has the wrong length")));
        }
        Ok(Abelianization { vars, images })
    }

    /// Every generator maps to the single variable `var`.
    pub fn uniform<S: AsRef<str>>(gens: &[S], var: &str) -> Self {
        let images = gens.iter().map(|g| (g.as_ref().to_string(), vec![1])).collect();
        Abelianization { vars: Vars::new(&[var]), images }
    }

    /// The abelianization of a group whose first Betti number is one, read
    /// off as the primitive integer kernel vector of the exponent-sum
    /// matrix, oriented so that its first nonzero entry is positive.
    pub fn infer(p: &Presentation, var: &str) -> Result<Self, RepError> {
        let n = p.gens().len();
        let rows: Vec<Vec<BigRational>> = p
            .rels()
            .iter()
            .map(|r| p.gens().iter().map(|g| BigRational::from_integer(r.exponent_sum(g).into())).collect())
            .collect();
        let kernel = rational_kernel(rows, n);
        if kernel.len() != 1 {
            return Err(RepError::NoAbelianization(format!(
                "first Betti number is {}, expected 1",
                kernel.len()
            )));
        }
        let v = primitive(&kernel[0]);
        let images = p.gens().iter().cloned().zip(v.into_iter().map(|k| vec![k])).collect();
        Ok(Abelianization { vars: Vars::new(&[var]), images })
    }

    /// Abelianization of the extended group of a diagram: edges of
    /// component `i` go to `u_i` and `x` goes to `v`. Knots use `u`, `v`;
    /// links use `u1, …, ud, v`.
    pub fn extended(d: &VirtualDiagram) -> Self {
        let k = d.num_components();
        let mut names: Vec<String> =
            if k == 1 { vec!["u".into()] } else { (1..=k).map(|i| format!("u{i}")).collect() };
        names.push("v".into());
        let mut images = BTreeMap::new();
        for (e, edge) in d.edges().iter().enumerate() {
            let mut v = vec![0; k + 1];
            v[edge.component] = 1;
            images.insert(d.edge_name(e), v);
        }
        let mut v = vec![0; k + 1];
        v[k] = 1;
        images.insert(EXTRA_GENERATOR.to_string(), v);
        Abelianization { vars: Vars::new(&names), images }
    }

    /// Abelianization of the Wirtinger presentation: arcs of component `i`
    /// go to `t_i` (`t` for a knot).
    pub fn wirtinger(d: &VirtualDiagram) -> Self {
        let k = d.num_components();
        let names: Vec<String> =
            if k == 1 { vec!["t".into()] } else { (1..=k).map(|i| format!("t{i}")).collect() };
        let mut images = BTreeMap::new();
        for (e, edge) in d.edges().iter().enumerate() {
            let mut v = vec![0; k];
            v[edge.component] = 1;
            images.insert(d.arc_name(d.arc_of_edge(e)), v);
        }
        Abelianization { vars: Vars::new(&names), images }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn image(&self, g: &str) -> Result<&[i64], RepError> {
        self.images.get(g).map(Vec::as_slice).ok_or_else(|| RepError::MissingGenerator(g.to_string()))
    }

    pub fn images(&self) -> &BTreeMap<String, Vec<i64>> {
        &self.images
    }

    pub fn image_word(&self, w: &Word) -> Result<Vec<i64>, RepError> {
        let mut acc = vec![0; self.vars.len()];
        for l in w.letters() {
            for (a, x) in acc.iter_mut().zip(self.image(&l.gen)?) {
                *a += l.exp as i64 * x;
            }
        }
        Ok(acc)
    }

    /// Whether every relator has zero exponent sum in every slot.
    pub fn respects(&self, p: &Presentation) -> Result<bool, RepError> {
        for r in p.rels() {
            if self.image_word(r)?.iter().any(|&x| x != 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn monomial(&self, exps: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(&self.vars, exps.to_vec(), Coeff::one())
    }

    /// The 1-dimensional representation `g ↦ [monomial]`.
    pub fn scalar_rep(&self) -> MatrixRep {
        let images = self
            .images
            .iter()
            .map(|(g, e)| {
                let m = RingMatrix::from_rows(&self.vars, vec![vec![self.monomial(e)]]).unwrap();
                (g.clone(), m)
            })
            .collect();
        MatrixRep::new(&self.vars, 1, images).expect("monomials are units")
    }
}

/// Splits on commas outside parentheses.
fn split_entries(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in line.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(line[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(line[start..].trim());
    out
}

fn rational_kernel(mut rows: Vec<Vec<BigRational>>, n: usize) -> Vec<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][f].clone();
            }
            v
        })
        .collect()
}

fn primitive(v: &[BigRational]) -> Vec<i64> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -1 } else { 1 };
    ints.iter()
        .map(|x| i64::try_from(x / &g).expect("small abelianization") * sign)
        .collect()
}

/// Generator images as invertible `n × n` matrices over a Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    vars: Vars,
    dim: usize,
    images: BTreeMap<String, RingMatrix>,
    inverses: BTreeMap<String, RingMatrix>,
}

/// A relator that does not evaluate to the identity.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("relator {index} ({relator}) does not map to the identity")]
pub struct RelatorFailure {
    /// 1-based position in the presentation.
    pub index: usize,
    pub relator: Word,
}

impl MatrixRep {
    pub fn new(vars: &Vars, dim: usize, images: BTreeMap<String, RingMatrix>) -> Result<Self, RepError> {
        let mut inverses = BTreeMap::new();
        let mut embedded = BTreeMap::new();
        for (g, m) in images {
            if m.rows() != dim || m.cols() != dim {
                return Err(RepError::Dimension(format!(
                    "image of '{g}' is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            let m = m.embed(vars)?;
            let inv = m.inverse().map_err(|_| RepError::NotInvertible {
                gen: g.clone(),
                det: m.determinant().map(|d| d.to_string()).unwrap_or_default(),
            })?;
            inverses.insert(g.clone(), inv);
            embedded.insert(g, m);
        }
        Ok(MatrixRep { vars: vars.clone(), dim, images: embedded, inverses })
    }

    /// Every generator maps to the `n × n` identity.
    pub fn trivial<S: AsRef<str>>(gens: &[S], vars: &Vars, n: usize) -> Self {
        let images = gens.iter().map(|g| (g.as_ref().to_string(), RingMatrix::identity(vars, n))).collect();
        MatrixRep::new(vars, n, images).expect("identity is invertible")
    }

    pub fn parse(text: &str) -> Result<Self, RepError> {
        let mut field = DEFAULT_FIELD;
        let mut vars = Vars::empty();
        let mut dim: Option<usize> = None;
        let mut images: BTreeMap<String, RingMatrix> = BTreeMap::new();
        let mut current: Option<(String, usize, Vec<Vec<LaurentPoly>>)> = None;
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let err = |line: usize, msg: String| RepError::Parse { line, msg };
        for (ln, line) in lines {
            if let Some((name, start, rows)) = current.as_mut() {
                let n = dim.unwrap();
                let entries = split_entries(line);
                if entries.len() != n {
                    return Err(err(ln, format!("expected {n} entries, found {}", entries.len())));
                }
                let row = entries
                    .iter()
                    .map(|e| parse_poly_in(e, &vars, field))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| err(ln, e.to_string()))?;
                rows.push(row);
                if rows.len() == n {
                    let m = RingMatrix::from_rows(&vars, std::mem::take(rows)).map_err(|e| err(*start, e.to_string()))?;
                    images.insert(std::mem::take(name), m);
                    current = None;
                }
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("field") if dim.is_none() => {
                    field = words
                        .next()
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| err(ln, "expected an integer after 'field'".into()))?;
                    crate::algebra::check_square_free(field).map_err(|e| err(ln, e.to_string()))?;
                }
                Some("vars") if dim.is_none() => {
                    let names: Vec<&str> = words.flat_map(|w| w.split(',')).filter(|w| !w.is_empty()).collect();
                    vars = Vars::new(&names);
                }
                Some("dim") if dim.is_none() => {
                    let n: usize = words
                        .next()
                        .and_then(|d| d.parse().ok())
                        .filter(|&n| n > 0)
                        .ok_or_else(|| err(ln, "expected a positive integer after 'dim'".into()))?;
                    dim = Some(n);
                }
                Some(w) if w.ends_with(':') && line == w => {
                    if dim.is_none() {
                        return Err(err(ln, "'dim' must come before the first generator".into()));
                    }
                    let name = w.trim_end_matches(':').to_string();
                    if !crate::groups::is_valid_name(&name) {
                        return Err(err(ln, format!("invalid generator name '{name}'")));
                    }
                    if images.contains_key(&name) {
                        return Err(err(ln, format!("generator '{name}' given twice")));
                    }
                    current = Some((name, ln, Vec::new()));
                }
                _ => return Err(err(ln, format!("unexpected line '{line}'"))),
            }
        }
        if let Some((name, start, _)) = current {
            return Err(err(start, format!("matrix for '{name}' is incomplete")));
        }
        let dim = dim.ok_or_else(|| err(0, "missing 'dim'".into()))?;
        MatrixRep::new(&vars, dim, images)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> impl Iterator<Item = &String> {
        self.images.keys()
    }

    pub fn image(&self, g: &str) -> Result<&RingMatrix, RepError> {
        self.images.get(g).ok_or_else(|| RepError::MissingGenerator(g.to_string()))
    }

    pub fn image_inverse(&self, g: &str) -> Result<&RingMatrix, RepError> {
        self.inverses.get(g).ok_or_else(|| RepError::MissingGenerator(g.to_string()))
    }

    /// Same representation over a larger variable list.
    pub fn embed(&self, vars: &Vars) -> Result<Self, RepError> {
        let images = self.images.iter().map(|(g, m)| Ok((g.clone(), m.embed(vars)?))).collect::<Result<_, RepError>>()?;
        let inverses = self.inverses.iter().map(|(g, m)| Ok((g.clone(), m.embed(vars)?))).collect::<Result<_, RepError>>()?;
        Ok(MatrixRep { vars: vars.clone(), dim: self.dim, images, inverses })
    }

    /// Adds a generator whose image is that of `w`, as after a Tietze move `g = w`.
    pub fn with_generator(&self, name: &str, w: &Word) -> Result<Self, RepError> {
        let m = eval_word(self, w)?;
        let inv = eval_word(self, &w.invert())?;
        let mut out = self.clone();
        out.images.insert(name.to_string(), m);
        out.inverses.insert(name.to_string(), inv);
        Ok(out)
    }

    /// Restriction to the listed generators, renamed through `rename`.
    pub fn restrict_renamed(&self, rename: &BTreeMap<String, String>) -> Result<Self, RepError> {
        let mut images = BTreeMap::new();
        let mut inverses = BTreeMap::new();
        for (new, old) in rename {
            images.insert(new.clone(), self.image(old)?.clone());
            inverses.insert(new.clone(), self.image_inverse(old)?.clone());
        }
        Ok(MatrixRep { vars: self.vars.clone(), dim: self.dim, images, inverses })
    }
}

impl fmt::Display for MatrixRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.vars.is_empty() {
            writeln!(f, "vars {}", self.vars.names().join(", "))?;
        }
        writeln!(f, "dim {}", self.dim)?;
        for (g, m) in &self.images {
            writeln!(f, "{g}:")?;
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(|p| p.to_string()).collect();
                writeln!(f, "{}", row.join(", "))?;
            }
        }
        Ok(())
    }
}

/// `g ↦ monomial(p1(g)) · p2(g)` over the union of both variable lists.
pub fn product_rep(p1: &Abelianization, p2: &MatrixRep) -> Result<MatrixRep, RepError> {
    let p2_gens: Vec<&String> = p2.gens().collect();
    let p1_gens: Vec<&String> = p1.images.keys().collect();
    if p1_gens != p2_gens {
        return Err(RepError::Dimension("the two homomorphisms have different generators".into()));
    }
    let mut names: Vec<String> = p1.vars.names().to_vec();
    for n in p2.vars.names() {
        if !names.contains(n) {
            names.push(n.clone());
        }
    }
    let vars = Vars::new(&names);
    let mut images = BTreeMap::new();
    for (g, e) in &p1.images {
        let mono = p1.monomial(e).embed(&vars)?;
        let m = p2.image(g)?.embed(&vars)?;
        images.insert(g.clone(), m.scale(&mono));
    }
    MatrixRep::new(&vars, p2.dim, images)
}

/// Product of generator images along the word; the empty word gives the identity.
pub fn eval_word(rep: &MatrixRep, w: &Word) -> Result<RingMatrix, RepError> {
    let mut acc = RingMatrix::identity(&rep.vars, rep.dim);
    for l in w.letters() {
        let m = if l.exp == 1 { rep.image(&l.gen)? } else { rep.image_inverse(&l.gen)? };
        acc = acc.mul(m)?;
    }
    Ok(acc)
}

/// Checks that every relator maps to the identity; reports the first that does not.
pub fn check_rep(rep: &MatrixRep, p: &Presentation) -> Result<Result<(), RelatorFailure>, RepError> {
    for (i, r) in p.rels().iter().enumerate() {
        if !eval_word(rep, r)?.is_identity() {
            return Ok(Err(RelatorFailure { index: i + 1, relator: r.clone() }));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    const FIG8: &str = "gens: a, b; rels: A b a B a b A B a B";

    fn omega_rep(entry: &str) -> MatrixRep {
        MatrixRep::parse(&format!("dim 2\na:\n1, 1\n0, 1\nb:\n1, 0\n{entry}, 1\n")).unwrap()
    }

    #[test]
    fn parse_and_check() {
        let p = Presentation::parse(FIG8).unwrap();
        let good = omega_rep("w(1/2,-1/2)");
        assert_eq!(check_rep(&good, &p).unwrap(), Ok(()));
        let bad = omega_rep("w(-1/2,1/2)");
        assert_eq!(check_rep(&omega_rep("w(1/2,1/2)"), &p).unwrap(), Ok(()));
        let fail = check_rep(&bad, &p).unwrap().unwrap_err();
        assert_eq!(fail.index, 1);
        let free = Presentation::parse("gens: a, b; rels:").unwrap();
        assert_eq!(check_rep(&bad, &free).unwrap(), Ok(()));
    }

    #[test]
    fn product_with_abelianization() {
        let p1 = Abelianization::uniform(&["a", "b"], "t");
        let p2 = omega_rep("w(-1/2,1/2)");
        let p = product_rep(&p1, &p2).unwrap();
        let t = Vars::new(&["t"]);
        let a = p.image("a").unwrap();
        assert_eq!(a[(0, 0)], parse_poly("t", &t).unwrap());
        assert_eq!(a[(0, 1)], parse_poly("t", &t).unwrap());
        assert!(a[(1, 0)].is_zero());
        let b = p.image("b").unwrap();
        assert_eq!(b[(1, 0)], parse_poly("-t*w(1/2,-1/2)", &t).unwrap());
        let s = p1.scalar_rep();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.image("a").unwrap()[(0, 0)], parse_poly("t", &t).unwrap());
    }

    #[test]
    fn eval_basics() {
        let rep = omega_rep("w(1/2,-1/2)");
        let g = ["a".to_string(), "b".to_string()];
        assert!(eval_word(&rep, &Word::empty()).unwrap().is_identity());
        let w = crate::groups::parse_word("a A", &g).unwrap();
        assert!(eval_word(&rep, &w).unwrap().is_identity());
        assert!(eval_word(&rep, &Word::gen("c")).is_err());
    }

    #[test]
    fn inferred_abelianization() {
        let p = Presentation::parse(FIG8).unwrap();
        let ab = Abelianization::infer(&p, "t").unwrap();
        assert_eq!(ab.image("a").unwrap(), [1]);
        assert_eq!(ab.image("b").unwrap(), [1]);
        let h = Presentation::parse("gens: x, a, b; rels: x a X = b, x b X = b A").unwrap();
        let ab = Abelianization::infer(&h, "t").unwrap();
        assert_eq!(ab.image("x").unwrap(), [1]);
        assert_eq!(ab.image("a").unwrap(), [0]);
        let free2 = Presentation::parse("gens: a, b; rels:").unwrap();
        assert!(Abelianization::infer(&free2, "t").is_err());
    }

    #[test]
    fn rep_file_errors() {
        assert!(matches!(MatrixRep::parse("dim 2\na:\n1, 1\n"), Err(RepError::Parse { line: 2, .. })));
        assert!(matches!(MatrixRep::parse("dim 1\na:\n0\n"), Err(RepError::NotInvertible { .. })));
        assert!(matches!(MatrixRep::parse("dim 1\na:\n1, 2\n"), Err(RepError::Parse { line: 3, .. })));
    }
}
