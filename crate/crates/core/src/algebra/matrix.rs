//! Dense matrices over Laurent polynomials and over ℤ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::poly::{LaurentPoly, Vars};
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    vars: Vars,
    data: Vec<LaurentPoly>,
}

impl RingMatrix {
    pub fn zeros(vars: &Vars, rows: usize, cols: usize) -> Self {
        RingMatrix { rows, cols, vars: vars.clone(), data: vec![LaurentPoly::zero(vars); rows * cols] }
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        let mut m = Self::zeros(vars, n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one(vars);
        }
        m
    }

    pub fn from_rows(vars: &Vars, rows: Vec<Vec<LaurentPoly>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        if rows.iter().flatten().any(|p| p.vars() != vars) {
            return Err(AlgebraError::Shape("entries over different variables".into()));
        }
        Ok(RingMatrix { rows: r, cols: c, vars: vars.clone(), data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.data.iter()
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let data: Vec<_> = self.data.iter().map(f).collect();
        let vars = data.first().map_or_else(|| self.vars.clone(), |p| p.vars().clone());
        RingMatrix { rows: self.rows, cols: self.cols, vars, data }
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        self.map(|e| e * p)
    }

    pub fn embed(&self, vars: &Vars) -> Result<Self, AlgebraError> {
        let data = self.data.iter().map(|p| p.embed(vars)).collect::<Result<_, _>>()?;
        Ok(RingMatrix { rows: self.rows, cols: self.cols, vars: vars.clone(), data })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(&self.vars, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Place `block` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &RingMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn add(&self, other: &RingMatrix) -> Result<Self, AlgebraError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::Shape("addition of different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(RingMatrix { rows: self.rows, cols: self.cols, vars: self.vars.clone(), data })
    }

    pub fn sub(&self, other: &RingMatrix) -> Result<Self, AlgebraError> {
        self.add(&other.map(|p| -p))
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.vars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.vars, self.rows)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination. The result
    /// is not canonicalized.
    pub fn determinant(&self) -> Result<LaurentPoly, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        match n {
            0 => return Ok(LaurentPoly::one(&self.vars)),
            1 => return Ok(self[(0, 0)].clone()),
            2 => return Ok(&(&self[(0, 0)] * &self[(1, 1)]) - &(&self[(0, 1)] * &self[(1, 0)])),
            _ => {}
        }
        let mut a: Vec<Vec<LaurentPoly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one(&self.vars);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                // sparsest nonzero pivot keeps the intermediate entries small
                let Some(p) = (k + 1..n)
                    .filter(|&i| !a[i][k].is_zero())
                    .min_by_key(|&i| a[i][k].num_terms())
                else {
                    return Ok(LaurentPoly::zero(&self.vars));
                };
                a.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = LaurentPoly::zero(&self.vars);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Inverse when the determinant is a unit of the Laurent ring.
    pub fn inverse(&self) -> Result<RingMatrix, AlgebraError> {
        let det = self.determinant()?;
        if !det.is_unit() {
            return Err(AlgebraError::NotInvertible(det.to_string()));
        }
        let inv_det = LaurentPoly::one(&self.vars).exact_div(&det).expect("unit");
        let n = self.rows;
        let mut out = Self::zeros(&self.vars, n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rows, &cols).determinant()?;
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                out[(i, j)] = &cof * &inv_det;
            }
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for RingMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RingMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RingMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Builds a constant matrix from integers; convenient in tests and examples.
pub fn int_ring_matrix(vars: &Vars, rows: &[&[i64]]) -> RingMatrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&x| LaurentPoly::constant(vars, Coeff::int(x))).collect())
        .collect();
    RingMatrix::from_rows(vars, rows).expect("rectangular")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == c), "ragged rows");
        IntMatrix { rows: rows.len(), cols: c, data: rows.iter().flatten().map(|&x| x.into()).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            self.data[dst * self.cols + j] -= v;
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            self.data[i * self.cols + dst] -= v;
        }
    }
}

/// Diagonal invariant factors `d1 | d2 | ...` (length `min(rows, cols)`,
/// nonnegative, zeros last).
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let k = a.rows.min(a.cols);
    for t in 0..k {
        // smallest nonzero entry of the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                let v = a.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut done = true;
            for i in t + 1..a.rows {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_floor(a.get(t, t));
                    a.row_axpy(i, t, &q);
                    if !a.get(i, t).is_zero() {
                        a.swap_rows(t, i);
                        done = false;
                    }
                }
            }
            for j in t + 1..a.cols {
                if !a.get(t, j).is_zero() {
                    let q = a.get(t, j).div_floor(a.get(t, t));
                    a.col_axpy(j, t, &q);
                    if !a.get(t, j).is_zero() {
                        a.swap_cols(t, j);
                        done = false;
                    }
                }
            }
            if !done {
                continue;
            }
            // pivot must divide the whole trailing block
            let p = a.get(t, t).clone();
            let bad = (t + 1..a.rows)
                .flat_map(|i| (t + 1..a.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    let one = -BigInt::one();
                    a.row_axpy(t, i, &one);
                }
                None => break,
            }
        }
    }
    (0..k).map(|i| a.get(i, i).abs()).collect()
}

/// Invariants of the abelian group `ℤ^cols / rowspace(m)`: nontrivial torsion
/// orders followed by a `0` for each free summand. Empty means trivial.
pub fn abelian_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let snf = smith_normal_form(m);
    let mut out: Vec<BigInt> = snf.iter().filter(|d| !d.is_one()).cloned().collect();
    for _ in snf.len()..m.cols {
        out.push(BigInt::zero());
    }
    out
}

/// `Z/5`, `Z + Z/3`, `trivial`.
pub fn format_abelian(inv: &[BigInt]) -> String {
    if inv.is_empty() {
        return "trivial".into();
    }
    let mut parts: Vec<String> = inv
        .iter()
        .filter(|d| d.is_zero())
        .map(|_| "Z".to_string())
        .collect();
    parts.extend(inv.iter().filter(|d| !d.is_zero()).map(|d| format!("Z/{d}")));
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn t() -> Vars {
        Vars::new(&["t"])
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn triangular_determinant() {
        let vars = t();
        let p = |s| parse_poly(s, &vars).unwrap();
        let m = RingMatrix::from_rows(&vars, vec![vec![p("t"), p("t")], vec![p("0"), p("t")]]).unwrap();
        assert_eq!(m.determinant().unwrap(), p("t^2"));
        let one = RingMatrix::from_rows(&vars, vec![vec![p("3*t - 1")]]).unwrap();
        assert_eq!(one.determinant().unwrap(), p("3*t - 1"));
    }

    #[test]
    fn determinant_requires_square() {
        let m = RingMatrix::zeros(&t(), 2, 3);
        assert!(matches!(m.determinant(), Err(AlgebraError::NotSquare(2, 3))));
    }

    #[test]
    fn bareiss_with_pivoting() {
        let vars = t();
        let m = int_ring_matrix(&vars, &[&[0, 2, 1], &[1, 0, 3], &[4, 1, 0]]);
        // cofactor expansion: 0*(0-3) - 2*(0-12) + 1*(1-0) = 25
        assert_eq!(m.determinant().unwrap().as_constant().unwrap(), Coeff::int(25));
        let s = int_ring_matrix(&vars, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert!(s.determinant().unwrap().is_zero());
    }

    #[test]
    fn inverse_of_unit_matrix() {
        let vars = t();
        let p = |s| parse_poly(s, &vars).unwrap();
        let m = RingMatrix::from_rows(&vars, vec![vec![p("t"), p("t")], vec![p("0"), p("t")]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let bad = RingMatrix::from_rows(&vars, vec![vec![p("t - 1")]]).unwrap();
        assert!(bad.inverse().is_err());
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])), big(&[1, 6]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![0, 0], vec![0, 0]])), big(&[0, 0]));
        assert_eq!(
            smith_normal_form(&IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])),
            big(&[2, 6, 12])
        );
    }

    #[test]
    fn abelian_group_formatting() {
        let m = IntMatrix::from_rows(&[vec![1, -2, 1]]);
        assert_eq!(format_abelian(&abelian_invariants(&m)), "Z + Z");
        let m = IntMatrix::from_rows(&[vec![3, 0]]);
        assert_eq!(format_abelian(&abelian_invariants(&m)), "Z + Z/3");
        assert_eq!(format_abelian(&abelian_invariants(&IntMatrix::from_rows(&[vec![1]]))), "trivial");
    }
}
