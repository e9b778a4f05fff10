//! Alexander matrices from Fox calculus, elementary polynomials, Wada's
//! invariant, virtual Alexander polynomials and branched-cover homology.

mod records;

pub use records::{AbelianRecord, NumberingRecord, PolyRecord, WadaRecord};

use itertools::Itertools;
use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{gcd_pair, AlgebraError, LaurentPoly, RingMatrix, Vars};
use crate::diagrams::{VirtualDiagram, EXTRA_GENERATOR};
use crate::groups::{
    fox_derivative, kill_orbits, operator_presentation, Action, Gamma, GroupError, Killed,
    OperatorPresentation, Presentation,
};
use crate::representations::{product_rep, Abelianization, MatrixRep, RepError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("matrix is {rows}x{cols} after deleting '{deleted}', not square")]
    NotSquare { rows: usize, cols: usize, deleted: String },
    #[error("det(P({0}) - I) is zero")]
    ZeroDenominator(String),
    #[error("{0}")]
    Precondition(String),
}

/// Fox matrix of a presentation evaluated through a representation.
/// Block `(i, j)` is the image of `∂r_i/∂g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix {
    pub matrix: RingMatrix,
    /// Label of each column block.
    pub gens: Vec<String>,
    pub dim: usize,
}

impl AlexanderMatrix {
    pub fn vars(&self) -> &Vars {
        self.matrix.vars()
    }

    /// Removes the column blocks of the listed generators.
    pub fn delete_generators(&self, names: &[&str]) -> Result<AlexanderMatrix, InvariantError> {
        if let Some(g) = names.iter().find(|g| !self.gens.iter().any(|h| h == *g)) {
            return Err(InvariantError::UnknownGenerator(g.to_string()));
        }
        let keep: Vec<usize> = (0..self.gens.len()).filter(|&j| !names.contains(&self.gens[j].as_str())).collect();
        let cols: Vec<usize> = keep.iter().flat_map(|&j| j * self.dim..(j + 1) * self.dim).collect();
        let rows: Vec<usize> = (0..self.matrix.rows()).collect();
        Ok(AlexanderMatrix {
            matrix: self.matrix.submatrix(&rows, &cols),
            gens: keep.iter().map(|&j| self.gens[j].clone()).collect(),
            dim: self.dim,
        })
    }

    pub fn elementary_poly(&self, i: usize) -> LaurentPoly {
        elementary_poly(&self.matrix, i)
    }
}

pub fn alexander_matrix(p: &Presentation, rep: &MatrixRep) -> Result<AlexanderMatrix, InvariantError> {
    let n = rep.dim();
    let vars = rep.vars();
    for g in p.gens() {
        rep.image(g)?;
    }
    let mut m = RingMatrix::zeros(vars, n * p.rels().len(), n * p.gens().len());
    for (i, r) in p.rels().iter().enumerate() {
        for (j, g) in p.gens().iter().enumerate() {
            let block = fox_derivative(r, g).evaluate(
                RingMatrix::zeros(vars, n, n),
                |w| crate::representations::eval_word(rep, w),
                |acc, img, k| {
                    let k = LaurentPoly::constant(vars, crate::algebra::Coeff::int(k));
                    acc.add(&img.scale(&k)).expect("same shape")
                },
            )?;
            m.set_block(i * n, j * n, &block);
        }
    }
    Ok(AlexanderMatrix { matrix: m, gens: p.gens().to_vec(), dim: n })
}

/// Relation matrix of the module presented by a Γ-group presentation with
/// Γ free abelian: entry `(r, g)` is `Σ ±γ` over the letters `g^γ` of `r`.
pub fn operator_module_matrix(op: &OperatorPresentation) -> Result<AlexanderMatrix, InvariantError> {
    let gamma = op.gamma();
    if gamma.moduli().iter().any(|&m| m != 0) {
        return Err(InvariantError::Precondition(format!(
            "module matrix needs a free abelian operator group, got {gamma}"
        )));
    }
    let vars = Vars::new(gamma.names());
    let mut m = RingMatrix::zeros(&vars, op.rels().len(), op.gens().len());
    for (i, r) in op.rels().iter().enumerate() {
        for l in r.letters() {
            let j = op.gens().iter().position(|g| *g == l.gen).expect("validated generator");
            let mono = LaurentPoly::monomial(&vars, l.coord.0.clone(), crate::algebra::Coeff::int(l.exp as i64));
            m[(i, j)] = &m[(i, j)] + &mono;
        }
    }
    Ok(AlexanderMatrix { matrix: m, gens: op.gens().to_vec(), dim: 1 })
}

/// Canonical gcd of all minors of size `rows - i`. Size zero or less gives
/// 1; a size larger than the column count gives 0.
pub fn elementary_poly(m: &RingMatrix, i: usize) -> LaurentPoly {
    let vars = m.vars();
    if i >= m.rows() {
        return LaurentPoly::one(vars);
    }
    let size = m.rows() - i;
    if size > m.cols() {
        return LaurentPoly::zero(vars);
    }
    let mut acc = LaurentPoly::zero(vars);
    for rows in (0..m.rows()).combinations(size) {
        for cols in (0..m.cols()).combinations(size) {
            let d = m.submatrix(&rows, &cols).determinant().expect("square minor");
            if d.is_zero() {
                continue;
            }
            acc = gcd_pair(&acc, &d);
            if acc.is_unit() {
                return acc.canonicalize();
            }
        }
    }
    acc.canonicalize()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WadaInvariant {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
    /// Canonical `numerator / denominator` when the division is exact.
    pub quotient: Option<LaurentPoly>,
    pub deleted: String,
}

/// Determinant of the Alexander matrix with `delete`'s columns removed,
/// over `det(P(delete) - I)`.
pub fn wada(p: &Presentation, rep: &MatrixRep, delete: &str) -> Result<WadaInvariant, InvariantError> {
    if !p.gens().iter().any(|g| g == delete) {
        return Err(InvariantError::UnknownGenerator(delete.to_string()));
    }
    if p.gens().len() != p.rels().len() + 1 {
        return Err(InvariantError::Precondition(format!(
            "Wada's invariant needs deficiency 1, presentation has {} generators and {} relators",
            p.gens().len(),
            p.rels().len()
        )));
    }
    let a = alexander_matrix(p, rep)?.delete_generators(&[delete])?;
    let (rows, cols) = (a.matrix.rows(), a.matrix.cols());
    if rows != cols {
        return Err(InvariantError::NotSquare { rows, cols, deleted: delete.to_string() });
    }
    let numerator = a.matrix.determinant()?.canonicalize();
    let pg = rep.image(delete)?;
    let denominator = pg.sub(&RingMatrix::identity(rep.vars(), rep.dim()))?.determinant()?.canonicalize();
    if denominator.is_zero() {
        return Err(InvariantError::ZeroDenominator(delete.to_string()));
    }
    let quotient = numerator.exact_div(&denominator).map(|q| q.canonicalize());
    Ok(WadaInvariant { numerator, denominator, quotient, deleted: delete.to_string() })
}

/// Order of `H₀`: canonical gcd of the `n × n` minors of the matrices
/// `P(g) - I` stacked vertically.
pub fn h0_order<S: AsRef<str>>(rep: &MatrixRep, gens: &[S]) -> Result<LaurentPoly, InvariantError> {
    let n = rep.dim();
    let vars = rep.vars();
    let mut m = RingMatrix::zeros(vars, n * gens.len(), n);
    for (k, g) in gens.iter().enumerate() {
        let b = rep.image(g.as_ref())?.sub(&RingMatrix::identity(vars, n))?;
        m.set_block(k * n, 0, &b);
    }
    Ok(elementary_poly(&m, m.rows() - n))
}

/// Untwisted Alexander polynomial `Δ_i` of a presentation under an
/// abelianization. With `redundant_relator` set, the matrix is treated as
/// having one superfluous row, so index `i` uses minors one size smaller
/// (the Wirtinger convention).
pub fn alexander_polynomial(
    p: &Presentation,
    ab: &Abelianization,
    i: usize,
    redundant_relator: bool,
) -> Result<LaurentPoly, InvariantError> {
    let m = alexander_matrix(p, &ab.scalar_rep())?;
    Ok(m.elementary_poly(i + redundant_relator as usize))
}

/// Untwisted `Δ_i(t)` of a diagram, read from its Wirtinger presentation.
pub fn diagram_alexander(d: &VirtualDiagram, i: usize) -> Result<LaurentPoly, InvariantError> {
    alexander_polynomial(&d.wirtinger(), &Abelianization::wirtinger(d), i, true)
}

/// The `i`-th (twisted) virtual Alexander polynomial in `u1..ud, v`: the
/// Fox matrix of the extended presentation with `x`'s columns removed,
/// optionally tensored with a representation of the extended group.
pub fn virtual_polys(d: &VirtualDiagram, i: usize, p2: Option<&MatrixRep>) -> Result<LaurentPoly, InvariantError> {
    let p = d.extended_presentation();
    let ab = Abelianization::extended(d);
    let rep = match p2 {
        Some(r) => product_rep(&ab, r)?,
        None => ab.scalar_rep(),
    };
    let m = alexander_matrix(&p, &rep)?.delete_generators(&[EXTRA_GENERATOR])?;
    Ok(m.elementary_poly(i))
}

/// `true` when no unit multiple of `q` lies in the subring generated by
/// `u_i v`; that rules out an integral Alexander numbering on any diagram.
/// The last variable of `q` is `v`.
pub fn almost_classical_obstruction(q: &LaurentPoly) -> bool {
    let mut offsets = q.terms().map(|(e, _)| {
        let (v, u) = e.split_last().expect("at least the variable v");
        v - u.iter().sum::<i64>()
    });
    match offsets.next() {
        None => false,
        Some(first) => offsets.any(|o| o != first),
    }
}

/// Whether `p(t)` and `p(t⁻¹)` agree up to units.
pub fn is_reciprocal(p: &LaurentPoly) -> bool {
    p.unit_equivalent(&p.reciprocal())
}

/// Invariant factors of `H₁` of the `r`-fold cyclic branched cover of a
/// knot, from its group presentation.
pub fn branched_cover_homology(p: &Presentation, r: u64) -> Result<Vec<BigInt>, InvariantError> {
    if r < 2 {
        return Err(InvariantError::Precondition(format!("cover degree must be at least 2, got {r}")));
    }
    let ab = Abelianization::infer(p, "t")?;
    let images: Vec<(&str, i64)> = p.gens().iter().map(|g| (g.as_str(), ab.image(g).unwrap()[0])).collect();
    let Some(&(meridian, _)) = images.iter().find(|(_, k)| k.abs() == 1) else {
        return Err(InvariantError::Precondition("no generator maps to a meridian".into()));
    };
    let action = Action::scalar(Gamma::cyclic("t", r)?, &images)?;
    let op = operator_presentation(p, &action)?;
    let all = op.gamma().elements().expect("finite");
    match kill_orbits(&op, &[meridian], Some(&all))? {
        Killed::Expanded(q) => Ok(q.abelian_invariants()),
        Killed::Operator(_) => unreachable!("coordinates were given"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::groups::rs_kernel;
    use std::collections::BTreeMap;

    const FIG8: &str = "gens: a, b; rels: A b a B a b A B a B";

    fn t() -> Vars {
        Vars::new(&["t"])
    }

    fn poly(s: &str) -> LaurentPoly {
        parse_poly(s, &t()).unwrap()
    }

    fn omega_product() -> MatrixRep {
        let p2 = MatrixRep::parse("dim 2\na:\n1, 1\n0, 1\nb:\n1, 0\nw(1/2,-1/2), 1\n").unwrap();
        product_rep(&Abelianization::uniform(&["a", "b"], "t"), &p2).unwrap()
    }

    #[test]
    fn untwisted_figure_eight() {
        let p = Presentation::parse(FIG8).unwrap();
        let m = alexander_matrix(&p, &Abelianization::uniform(&["a", "b"], "t").scalar_rep()).unwrap();
        assert_eq!(m.matrix[(0, 0)], poly("-t^-1 + 3 - t"));
        assert_eq!(m.matrix[(0, 1)], poly("t^-1 - 3 + t"));
        assert_eq!(m.elementary_poly(0), poly("t^2 - 3*t + 1"));
        assert!(m.elementary_poly(1).is_one());
    }

    #[test]
    fn twisted_matrix_entries() {
        let p = Presentation::parse(FIG8).unwrap();
        let m = alexander_matrix(&p, &omega_product()).unwrap().matrix;
        // w = w(1/2,-1/2), wb = w(1/2,1/2), s = w(0,1)
        let expected = [
            "-w(1/2,1/2)*t + 1 + w(1/2,1/2) - t^-1",
            "t - 2 - w(1/2,-1/2) + t^-1",
            "-2 + t^-1",
            "-w(1/2,-1/2)*t + 1 + w(1/2,-1/2) - t^-1",
            "w(0,1)*w(1/2,1/2)*(t - 1)",
            "-w(1/2,1/2)*t + 3 - t^-1",
            "w(1/2,1/2)*t - 1",
            "2*t - 3 + t^-1",
        ];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(m[(k / 4, k % 4)], poly(e), "entry {k}");
        }
    }

    #[test]
    fn wada_figure_eight() {
        let p = Presentation::parse(FIG8).unwrap();
        let rep = omega_product();
        for g in ["a", "b"] {
            let w = wada(&p, &rep, g).unwrap();
            assert_eq!(w.numerator, poly("(t-1)^2*(t^2-4*t+1)").canonicalize());
            assert_eq!(w.denominator, poly("(t-1)^2").canonicalize());
            assert_eq!(w.quotient.unwrap(), poly("t^2-4*t+1"));
        }
        let triv = Abelianization::uniform(&["a", "b"], "t").scalar_rep();
        let w = wada(&p, &triv, "a").unwrap();
        assert!(w.numerator.unit_equivalent(&poly("t^2-3*t+1")));
        assert!(w.denominator.unit_equivalent(&poly("t-1")));
        assert_eq!(w.quotient, None);
    }

    #[test]
    fn wada_is_delta1_over_delta0() {
        let p = Presentation::parse(FIG8).unwrap();
        let rep = omega_product();
        let d1 = alexander_matrix(&p, &rep).unwrap().elementary_poly(0);
        let d0 = h0_order(&rep, p.gens()).unwrap();
        let w = wada(&p, &rep, "a").unwrap();
        assert!((&w.numerator * &d0).unit_equivalent(&(&w.denominator * &d1)));
    }

    #[test]
    fn elementary_conventions() {
        let m = RingMatrix::zeros(&t(), 0, 2);
        assert!(elementary_poly(&m, 0).is_one());
        let m = RingMatrix::from_rows(&t(), vec![vec![poly("t"), poly("1")]]).unwrap();
        assert!(elementary_poly(&m, 1).is_one());
        let tall = RingMatrix::from_rows(&t(), vec![vec![poly("t")], vec![poly("1")]]).unwrap();
        assert!(elementary_poly(&tall, 0).is_zero());
    }

    #[test]
    fn kernel_and_alexander_group_modules() {
        let g = Presentation::parse(
            "gens: x, a, d; rels: a x d A X A x a a x a = d x a x d, d x a x d = x a d x a",
        )
        .unwrap();
        let chi = BTreeMap::from([("x".to_string(), 1), ("a".to_string(), 0), ("d".to_string(), 0)]);
        let kernel = operator_module_matrix(&rs_kernel(&g, &chi).unwrap()).unwrap();
        assert!(kernel.elementary_poly(0).is_zero());
        assert!(kernel.elementary_poly(1).is_one());
        let alex = OperatorPresentation::parse(
            "gamma: t; gens: c, d; rels: c d[t:1] c[t:2] = d c[t:1] d[t:2], c d[t:1] c[t:2] = d c[t:1] d[t:2]",
        )
        .unwrap();
        let m = operator_module_matrix(&alex).unwrap();
        assert!(m.elementary_poly(0).is_zero());
        assert_eq!(m.elementary_poly(1), poly("t^2 - t + 1"));
    }

    #[test]
    fn virtual_polynomials() {
        let vt = VirtualDiagram::parse("U1+ U2+ O3+ O1+ O2+ U3+").unwrap();
        let q = virtual_polys(&vt, 0, None).unwrap();
        let uv = Vars::new(&["u", "v"]);
        let expected = parse_poly("1 - u^2 - u*v - v^2 + u^3*v + u*v^3 + u^2*v^2 - u^3*v^3", &uv).unwrap();
        assert_eq!(q, expected.canonicalize());
        assert!(almost_classical_obstruction(&q));
        let tre = VirtualDiagram::parse("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let z = virtual_polys(&tre, 0, None).unwrap();
        assert!(z.is_zero());
        assert!(!almost_classical_obstruction(&z));
        assert!(!almost_classical_obstruction(&parse_poly("2 - u*v", &uv).unwrap()));
    }

    #[test]
    fn reciprocality() {
        assert!(is_reciprocal(&poly("t^2 - 3*t + 1")));
        assert!(!is_reciprocal(&poly("2 - t")));
    }

    #[test]
    fn diagram_polynomials() {
        let f8 = VirtualDiagram::parse("O1+ U2- O3- U1+ O4+ U3- O2- U4+").unwrap();
        assert_eq!(diagram_alexander(&f8, 0).unwrap(), poly("t^2 - 3*t + 1"));
        let tre = VirtualDiagram::parse("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(diagram_alexander(&tre, 0).unwrap(), poly("t^2 - t + 1"));
        assert!(diagram_alexander(&VirtualDiagram::parse("").unwrap(), 0).unwrap().is_one());
    }

    #[test]
    fn branched_covers() {
        let p = Presentation::parse(FIG8).unwrap();
        assert_eq!(branched_cover_homology(&p, 2).unwrap(), [BigInt::from(5)]);
        let tre = VirtualDiagram::parse("O1+ U2+ O3+ U1+ O2+ U3+").unwrap().wirtinger();
        assert_eq!(branched_cover_homology(&tre, 2).unwrap(), [BigInt::from(3)]);
        let unknot = VirtualDiagram::parse("").unwrap().wirtinger();
        assert!(branched_cover_homology(&unknot, 3).unwrap().is_empty());
        assert!(branched_cover_homology(&p, 1).is_err());
    }
}
