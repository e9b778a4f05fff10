//! Alexander numberings: integer (or mod 2) edge labels with
//! `ν(c) = ν(a)` and `ν(b) = ν(d) = ν(a) + 1` at every classical crossing.
//!
//! All constraints are differences `ν(e) − ν(f) = k`, so a solution is a
//! potential on the constraint graph. The labels are fixed by putting 0 on
//! the first edge of every connected piece and propagating breadth first.

use std::collections::VecDeque;
use std::fmt;

use super::gauss::VirtualDiagram;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Numbering {
    /// 0 for integral labels, 2 for labels mod 2.
    pub modulus: u32,
    pub labels: Vec<i64>,
}

/// Why no numbering exists: following constraints from the first edge of a
/// connected piece around to `crossing` gives `edge` two different labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberingConflict {
    pub crossing: u32,
    pub edge: usize,
    pub labels: (i64, i64),
}

impl fmt::Display for NumberingConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "crossing {} forces e{} to be both {} and {}",
            self.crossing,
            self.edge + 1,
            self.labels.0,
            self.labels.1
        )
    }
}

impl fmt::Display for Numbering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "e{}={l}", i + 1)?;
        }
        Ok(())
    }
}

impl VirtualDiagram {
    /// `(crossing id, e, f, k)` meaning `ν(e) − ν(f) = k`.
    fn numbering_constraints(&self) -> Vec<(u32, usize, usize, i64)> {
        let mut out = Vec::new();
        for c in self.crossings() {
            let r = c.roles();
            out.push((c.id, r.c, r.a, 0));
            out.push((c.id, r.b, r.a, 1));
            out.push((c.id, r.d, r.a, 1));
        }
        out
    }

    /// Solves for an Alexander numbering over ℤ (`modulus` 0) or ℤ/2
    /// (`modulus` 2).
    pub fn alexander_numbering(&self, modulus: u32) -> Result<Numbering, NumberingConflict> {
        assert!(modulus == 0 || modulus == 2, "modulus must be 0 or 2");
        let norm = |x: i64| if modulus == 0 { x } else { x.rem_euclid(modulus as i64) };
        let n = self.edges().len();
        let mut adj: Vec<Vec<(usize, i64, u32)>> = vec![Vec::new(); n];
        for (id, e, f, k) in self.numbering_constraints() {
            adj[f].push((e, k, id));
            adj[e].push((f, -k, id));
        }
        let mut label: Vec<Option<i64>> = vec![None; n];
        for root in 0..n {
            if label[root].is_some() {
                continue;
            }
            label[root] = Some(0);
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                let lf = label[f].unwrap();
                for &(e, k, id) in &adj[f] {
                    let want = norm(lf + k);
                    match label[e] {
                        None => {
                            label[e] = Some(want);
                            queue.push_back(e);
                        }
                        Some(have) if have != want => {
                            return Err(NumberingConflict { crossing: id, edge: e, labels: (have, want) })
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(Numbering { modulus, labels: label.into_iter().map(Option::unwrap).collect() })
    }

    /// Direct check of every crossing constraint.
    pub fn check_numbering(&self, n: &Numbering) -> bool {
        if n.labels.len() != self.edges().len() {
            return false;
        }
        let norm = |x: i64| if n.modulus == 0 { x } else { x.rem_euclid(n.modulus as i64) };
        self.numbering_constraints()
            .iter()
            .all(|&(_, e, f, k)| norm(n.labels[e] - n.labels[f] - k) == 0)
    }
}
