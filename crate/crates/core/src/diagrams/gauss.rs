//! Signed Gauss codes and the edges, arcs and crossings they induce.
//!
//! Grammar:
//!
//! ```text
//! code      := component { "/" component }
//! component := { passage }
//! passage   := ("O" | "U") id ("+" | "-")      e.g. O1+ U12-
//! ```
//!
//! Passages are separated by whitespace; `#` starts a comment. An empty
//! component is a circle without classical crossings. Virtual crossings are
//! never written: they are whatever extra intersections a planar drawing of
//! the code needs.
//!
//! Edge `j` of a component runs from its `j`-th passage to the next one,
//! cyclically; edges are numbered globally, component by component.

use std::collections::BTreeMap;
use std::fmt;

use super::DiagramError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub crossing: u32,
    pub over: bool,
    pub sign: i8,
}

/// A maximal segment between consecutive classical passages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub component: usize,
    /// Global index of the passage the edge leaves (`None` for a crossingless circle).
    pub from: Option<usize>,
    pub to: Option<usize>,
}

/// Edge roles at a crossing. Positive: `a`, `d` are the incoming and
/// outgoing under-edges, `b`, `c` the incoming and outgoing over-edges.
/// Negative: `a`, `d` are the incoming and outgoing over-edges, `b`, `c`
/// the incoming and outgoing under-edges. In both cases `a`, `b` enter and
/// `d`, `c` leave; the relation reads `ab = cd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Roles {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: u32,
    pub sign: i8,
    /// Global passage indices.
    pub over: usize,
    pub under: usize,
    pub in_over: usize,
    pub out_over: usize,
    pub in_under: usize,
    pub out_under: usize,
}

impl Crossing {
    pub fn roles(&self) -> Roles {
        if self.sign > 0 {
            Roles { a: self.in_under, d: self.out_under, b: self.in_over, c: self.out_over }
        } else {
            Roles { a: self.in_over, d: self.out_over, b: self.in_under, c: self.out_under }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualDiagram {
    components: Vec<Vec<Passage>>,
    /// Global passage index -> (component, position).
    passages: Vec<(usize, usize)>,
    edges: Vec<Edge>,
    crossings: Vec<Crossing>,
    arc_of_edge: Vec<usize>,
    num_arcs: usize,
}

impl VirtualDiagram {
    pub fn parse(code: &str) -> Result<Self, DiagramError> {
        let mut components: Vec<Vec<Passage>> = vec![Vec::new()];
        let mut seen: BTreeMap<u32, Vec<(Passage, usize)>> = BTreeMap::new();
        let mut in_comment = false;
        let bytes = code.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if in_comment {
                in_comment = c != b'\n';
                i += 1;
                continue;
            }
            match c {
                b'#' => {
                    in_comment = true;
                    i += 1;
                }
                b'/' => {
                    components.push(Vec::new());
                    i += 1;
                }
                c if c.is_ascii_whitespace() => i += 1,
                _ => {
                    let start = i;
                    while i < bytes.len()
                        && !bytes[i].is_ascii_whitespace()
                        && bytes[i] != b'/'
                        && bytes[i] != b'#'
                    {
                        i += 1;
                    }
                    let p = parse_passage(&code[start..i], start)?;
                    let entry = seen.entry(p.crossing).or_default();
                    if let Some((q, _)) = entry.first() {
                        if entry.len() >= 2 {
                            return Err(DiagramError::parse(
                                start,
                                format!("crossing {} appears more than twice", p.crossing),
                            ));
                        }
                        if q.over == p.over {
                            let kind = if p.over { "over" } else { "under" };
                            return Err(DiagramError::parse(
                                start,
                                format!("crossing {} is {kind} twice", p.crossing),
                            ));
                        }
                        if q.sign != p.sign {
                            return Err(DiagramError::parse(
                                start,
                                format!("crossing {} has inconsistent signs", p.crossing),
                            ));
                        }
                    }
                    entry.push((p, start));
                    components.last_mut().unwrap().push(p);
                }
            }
        }
        if let Some((id, v)) = seen.iter().find(|(_, v)| v.len() != 2) {
            return Err(DiagramError::parse(v[0].1, format!("crossing {id} appears only once")));
        }
        Ok(Self::build(components))
    }

    fn build(components: Vec<Vec<Passage>>) -> Self {
        let mut passages = Vec::new();
        let mut edges = Vec::new();
        for (k, comp) in components.iter().enumerate() {
            let base = passages.len();
            let m = comp.len();
            for j in 0..m {
                passages.push((k, j));
            }
            if m == 0 {
                edges.push(Edge { component: k, from: None, to: None });
            } else {
                for j in 0..m {
                    edges.push(Edge { component: k, from: Some(base + j), to: Some(base + (j + 1) % m) });
                }
            }
        }
        let mut edge_out = vec![0; passages.len()];
        let mut edge_in = vec![0; passages.len()];
        for (e, edge) in edges.iter().enumerate() {
            if let (Some(f), Some(t)) = (edge.from, edge.to) {
                edge_out[f] = e;
                edge_in[t] = e;
            }
        }
        let mut by_id: BTreeMap<u32, (Option<usize>, Option<usize>, i8)> = BTreeMap::new();
        for (g, &(k, j)) in passages.iter().enumerate() {
            let p = components[k][j];
            let slot = by_id.entry(p.crossing).or_insert((None, None, p.sign));
            if p.over {
                slot.0 = Some(g);
            } else {
                slot.1 = Some(g);
            }
        }
        let crossings: Vec<Crossing> = by_id
            .into_iter()
            .map(|(id, (o, u, sign))| {
                let (o, u) = (o.unwrap(), u.unwrap());
                Crossing {
                    id,
                    sign,
                    over: o,
                    under: u,
                    in_over: edge_in[o],
                    out_over: edge_out[o],
                    in_under: edge_in[u],
                    out_under: edge_out[u],
                }
            })
            .collect();
        // Arcs: edges joined across over-passages.
        let mut uf: Vec<usize> = (0..edges.len()).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let n = uf[y];
                uf[y] = r;
                y = n;
            }
            r
        }
        for c in &crossings {
            let (a, b) = (find(&mut uf, c.in_over), find(&mut uf, c.out_over));
            if a != b {
                uf[a.max(b)] = a.min(b);
            }
        }
        let mut label: BTreeMap<usize, usize> = BTreeMap::new();
        let mut arc_of_edge = Vec::with_capacity(edges.len());
        for e in 0..edges.len() {
            let r = find(&mut uf, e);
            let n = label.len();
            arc_of_edge.push(*label.entry(r).or_insert(n));
        }
        VirtualDiagram { num_arcs: label.len(), components, passages, edges, crossings, arc_of_edge }
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_arcs(&self) -> usize {
        self.num_arcs
    }

    pub fn arc_of_edge(&self, e: usize) -> usize {
        self.arc_of_edge[e]
    }

    /// `e1, e2, ...`
    pub fn edge_name(&self, e: usize) -> String {
        format!("e{}", e + 1)
    }

    /// `a1, a2, ...`
    pub fn arc_name(&self, a: usize) -> String {
        format!("a{}", a + 1)
    }

    pub fn passage(&self, global: usize) -> Passage {
        let (k, j) = self.passages[global];
        self.components[k][j]
    }
}

impl fmt::Display for VirtualDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, comp) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(if comp.is_empty() { " /" } else { " / " })?;
            }
            for (j, p) in comp.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                let s = if p.sign > 0 { '+' } else { '-' };
                write!(f, "{}{}{}", if p.over { 'O' } else { 'U' }, p.crossing, s)?;
            }
        }
        Ok(())
    }
}

fn parse_passage(tok: &str, pos: usize) -> Result<Passage, DiagramError> {
    let over = match tok.as_bytes()[0] {
        b'O' => true,
        b'U' => false,
        _ => return Err(DiagramError::parse(pos, format!("expected O or U in '{tok}'"))),
    };
    let sign = match tok.as_bytes()[tok.len() - 1] {
        b'+' => 1,
        b'-' => -1,
        _ => return Err(DiagramError::parse(pos + tok.len() - 1, format!("missing sign in '{tok}'"))),
    };
    let digits = &tok[1..tok.len().saturating_sub(1).max(1)];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(DiagramError::parse(pos + 1, format!("bad crossing id in '{tok}'")));
    }
    let crossing = digits
        .parse()
        .map_err(|_| DiagramError::parse(pos + 1, format!("crossing id too large in '{tok}'")))?;
    Ok(Passage { crossing, over, sign })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_structure() {
        let d = VirtualDiagram::parse("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(d.crossings().len(), 3);
        assert_eq!(d.edges().len(), 6);
        assert_eq!(d.num_arcs(), 3);
        assert_eq!(d.to_string(), "O1+ U2+ O3+ U1+ O2+ U3+");
    }

    #[test]
    fn unknot_and_links() {
        let d = VirtualDiagram::parse("").unwrap();
        assert_eq!((d.crossings().len(), d.edges().len(), d.num_arcs()), (0, 1, 1));
        let h = VirtualDiagram::parse("O1+ U2+ / U1+ O2+").unwrap();
        assert_eq!(h.num_components(), 2);
        assert_eq!(h.edges().len(), 4);
        assert_eq!(h.edges()[2].component, 1);
        let split = VirtualDiagram::parse("/").unwrap();
        assert_eq!(split.edges().len(), 2);
    }

    #[test]
    fn roles_follow_sign() {
        let d = VirtualDiagram::parse("O1+ U2- O3+ U1+ O2- U3+").unwrap();
        let c1 = &d.crossings()[0];
        let r = c1.roles();
        assert_eq!((r.a, r.d, r.b, r.c), (c1.in_under, c1.out_under, c1.in_over, c1.out_over));
        let c2 = &d.crossings()[1];
        let r = c2.roles();
        assert_eq!((r.a, r.d, r.b, r.c), (c2.in_over, c2.out_over, c2.in_under, c2.out_under));
    }

    #[test]
    fn rejects_bad_codes() {
        let cases = [
            ("O1+ U1+ X2+", 8),
            ("O1+ U1", 5),
            ("O1+ Ux+", 5),
            ("O1+ U2+", 0),
            ("O1+ O1+", 4),
            ("O1+ U1-", 4),
            ("O1+ U1+ O1+", 8),
        ];
        for (code, pos) in cases {
            match VirtualDiagram::parse(code) {
                Err(DiagramError::Parse { pos: p, .. }) => assert_eq!(p, pos, "{code}"),
                other => panic!("{code}: {other:?}"),
            }
        }
    }
}
