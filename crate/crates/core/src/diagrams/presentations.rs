//! Group presentations read off a diagram.

use super::gauss::VirtualDiagram;
use crate::groups::{Letter, Presentation, Word};

fn word(parts: &[(&str, i32)]) -> Word {
    Word::from_letters(parts.iter().map(|&(g, e)| Letter::new(g, e)))
}

impl VirtualDiagram {
    fn arc_gens(&self) -> Vec<String> {
        (0..self.num_arcs()).map(|a| self.arc_name(a)).collect()
    }

    fn arc_of(&self, e: usize) -> String {
        self.arc_name(self.arc_of_edge(e))
    }

    /// One generator per arc, one relator per classical crossing. With `y`
    /// the over-arc: `a y = y d` at a positive crossing (`a`, `d` the
    /// under-arcs in and out) and `y b = c y` at a negative one (`b`, `c`
    /// the under-arcs in and out).
    pub fn wirtinger(&self) -> Presentation {
        let rels = self
            .crossings()
            .iter()
            .map(|c| {
                let y = self.arc_of(c.in_over);
                let i = self.arc_of(c.in_under);
                let o = self.arc_of(c.out_under);
                if c.sign > 0 {
                    word(&[(&i, 1), (&y, 1), (&o, -1), (&y, -1)])
                } else {
                    word(&[(&y, 1), (&i, 1), (&y, -1), (&o, -1)])
                }
            })
            .collect();
        Presentation::new(self.arc_gens(), rels).expect("arc names are generators")
    }

    /// Core group: `d = b ā b` at every crossing, with `b` the over-arc and
    /// `a`, `d` the two under-arcs.
    pub fn core_presentation(&self) -> Presentation {
        let rels = self
            .crossings()
            .iter()
            .map(|c| {
                let y = self.arc_of(c.in_over);
                let i = self.arc_of(c.in_under);
                let o = self.arc_of(c.out_under);
                word(&[(&o, 1), (&y, -1), (&i, 1), (&y, -1)])
            })
            .collect();
        Presentation::new(self.arc_gens(), rels).expect("arc names are generators")
    }

    /// Wirtinger presentation plus the square of every generator.
    pub fn orbifold_presentation(&self) -> Presentation {
        let w = self.wirtinger();
        let mut rels = w.rels().to_vec();
        rels.extend(w.gens().iter().map(|g| Word::gen(g).pow(2)));
        w.with_rels(rels)
    }

    /// Generators `e1, e2, ...` (edges) and `x`; at each crossing
    /// `ab = cd` together with `x̄ b x = c` (positive) or `x̄ d x = a`
    /// (negative), with the edge roles of [`super::Crossing::roles`].
    pub fn extended_presentation(&self) -> Presentation {
        let mut gens: Vec<String> = (0..self.edges().len()).map(|e| self.edge_name(e)).collect();
        gens.push(EXTRA_GENERATOR.to_string());
        let x = EXTRA_GENERATOR;
        let mut rels = Vec::new();
        for c in self.crossings() {
            let r = c.roles();
            let [a, b, cc, d] = [r.a, r.b, r.c, r.d].map(|e| self.edge_name(e));
            rels.push(word(&[(&a, 1), (&b, 1), (&d, -1), (&cc, -1)]));
            if c.sign > 0 {
                rels.push(word(&[(x, -1), (&b, 1), (x, 1), (&cc, -1)]));
            } else {
                rels.push(word(&[(x, -1), (&d, 1), (x, 1), (&a, -1)]));
            }
        }
        Presentation::new(gens, rels).expect("edge names are generators")
    }

    /// Renaming that sends every edge generator to its arc generator.
    pub fn edge_to_arc(&self) -> std::collections::BTreeMap<String, String> {
        (0..self.edges().len()).map(|e| (self.edge_name(e), self.arc_of(e))).collect()
    }

    /// The extended presentation modulo `⟨⟨x⟩⟩` with every edge renamed to
    /// its arc. The relators `x̄bx = c` become `b = c` between edges of one
    /// arc and vanish under the renaming.
    pub fn extended_mod_x(&self) -> Presentation {
        self.extended_presentation()
            .kill_generators(&[EXTRA_GENERATOR])
            .expect("x is a generator")
            .rename(&self.edge_to_arc())
    }
}

/// Name of the extra generator of the extended group.
pub const EXTRA_GENERATOR: &str = "x";

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(p: &Presentation) -> Vec<String> {
        p.abelian_invariants().iter().map(|n| n.to_string()).collect()
    }

    const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";
    const FIGURE_EIGHT: &str = "O1+ U2- O3- U1+ O4+ U3- O2- U4+";

    #[test]
    fn unknot() {
        let d = VirtualDiagram::parse("").unwrap();
        assert_eq!(d.wirtinger().to_string(), "gens: a1; rels:");
        assert_eq!(inv(&d.core_presentation()), ["0"]);
        assert_eq!(inv(&d.orbifold_presentation()), ["2"]);
        assert_eq!(d.extended_presentation().to_string(), "gens: e1, x; rels:");
    }

    #[test]
    fn abelianizations() {
        let t = VirtualDiagram::parse(TREFOIL).unwrap();
        assert_eq!(inv(&t.wirtinger()), ["0"]);
        assert_eq!(inv(&t.core_presentation()), ["3", "0"]);
        assert_eq!(inv(&t.orbifold_presentation()), ["2"]);
        let f = VirtualDiagram::parse(FIGURE_EIGHT).unwrap();
        assert_eq!(inv(&f.wirtinger()), ["0"]);
        assert_eq!(inv(&f.core_presentation()), ["5", "0"]);
    }

    #[test]
    fn extended_kills_to_wirtinger() {
        for code in [TREFOIL, FIGURE_EIGHT, "U1+ U2+ O3+ O1+ O2+ U3+", "O1+ U2+ / U1+ O2+"] {
            let d = VirtualDiagram::parse(code).unwrap();
            assert!(d.extended_mod_x().same_as(&d.wirtinger()), "{code}");
        }
    }
}
