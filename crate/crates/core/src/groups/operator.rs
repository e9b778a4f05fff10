//! Γ-group presentations of derived groups, orbit killing, finite
//! expansion, Reidemeister–Schreier kernels and the HNN free reduction.
//!
//! Text form:
//!
//! ```text
//! gamma: t; gens: a, b; rels: A[t:-1] b[t:-1] a B a b[t:1] A[t:1] B a B
//! gamma: t mod 2; gens: a; rels: a a[t:1]
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::derived::{delta_rewrite, parse_derived_at, Action, Coord, DerivedWord, Gamma};
use super::word::{parse_gens_header, split_top, strip_comments, Letter, Presentation, Word};
use super::GroupError;

/// Orbit generators and orbit relators of a Γ-group. Relators are stored
/// once, at the identity coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorPresentation {
    gamma: Gamma,
    gens: Vec<String>,
    rels: Vec<DerivedWord>,
}

/// Result of [`kill_orbits`]: whole orbits leave a Γ-group; selected
/// coordinates of a finite Γ leave an ordinary presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Killed {
    Operator(OperatorPresentation),
    Expanded(Presentation),
}

impl OperatorPresentation {
    pub fn new(gamma: Gamma, gens: Vec<String>, rels: Vec<DerivedWord>) -> Result<Self, GroupError> {
        let set: BTreeSet<&String> = gens.iter().collect();
        if set.len() != gens.len() {
            let dup = gens.iter().find(|g| gens.iter().filter(|h| h == g).count() > 1).unwrap();
            return Err(GroupError::DuplicateGenerator(dup.clone()));
        }
        for r in &rels {
            for l in r.letters() {
                if !set.contains(&l.gen) {
                    return Err(GroupError::UnknownGenerator(l.gen.clone()));
                }
                if l.coord.0.len() != gamma.rank() || gamma.element(&l.coord.0)? != l.coord {
                    return Err(GroupError::Gamma(format!("coordinate of '{}' not in Γ", l.gen)));
                }
            }
        }
        Ok(OperatorPresentation { gamma, gens, rels })
    }

    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let text = strip_comments(text);
        let t = text.trim_start();
        let start = text.len() - t.len();
        let body = t
            .strip_prefix("gamma:")
            .ok_or_else(|| GroupError::parse(start, "expected 'gamma:'"))?;
        let semi = body
            .find(';')
            .ok_or_else(|| GroupError::parse(start + 6 + body.len(), "expected ';'"))?;
        let gamma = parse_gamma(&body[..semi], start + 6)?;
        let rest_pos = start + 6 + semi + 1;
        let (gens, rest, rest_pos) = parse_gens_header(&body[semi + 1..], "gens:")
            .map_err(|e| e.offset(rest_pos))
            .map(|(g, r, p)| (g, r, p + rest_pos))?;
        let rels_src = rest.trim_start();
        let off = rest_pos + (rest.len() - rels_src.len());
        let body = rels_src
            .strip_prefix("rels:")
            .ok_or_else(|| GroupError::parse(off, "expected 'rels:'"))?;
        let mut rels = Vec::new();
        if !body.trim().is_empty() {
            for (chunk, pos) in split_top(body, ',', off + 5) {
                let sides = split_top(chunk, '=', pos);
                let w = match sides.as_slice() {
                    [(w, p)] => parse_derived_at(w, *p, &gens, &gamma)?,
                    [(l, lp), (r, rp)] => {
                        let l = parse_derived_at(l, *lp, &gens, &gamma)?;
                        let r = parse_derived_at(r, *rp, &gens, &gamma)?;
                        l.concat(&r.inverse())
                    }
                    _ => return Err(GroupError::parse(pos, "more than one '=' in a relation")),
                };
                rels.push(w);
            }
        }
        OperatorPresentation::new(gamma, gens, rels)
    }

    pub fn gamma(&self) -> &Gamma {
        &self.gamma
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn rels(&self) -> &[DerivedWord] {
        &self.rels
    }

    /// Ordinary presentation of the sub-family of generators and relators
    /// living inside a finite window of coordinates. With `window` equal to
    /// all of a finite Γ this is a presentation of the derived group.
    /// Generator `g` at coordinate `γ` is named `g_<γ>` (see
    /// [`Gamma::coord_suffix`]); generators are listed coordinate-major.
    pub fn expand(&self, window: &[Coord]) -> Presentation {
        let win: BTreeSet<&Coord> = window.iter().collect();
        let name = |g: &str, c: &Coord| format!("{g}_{}", self.gamma.coord_suffix(c));
        let gens: Vec<String> =
            window.iter().flat_map(|c| self.gens.iter().map(move |g| name(g, c))).collect();
        let mut rels = Vec::new();
        for r in &self.rels {
            for c in window {
                let s = r.shift(&self.gamma, c);
                if s.letters().iter().all(|l| win.contains(&l.coord)) {
                    rels.push(Word::from_letters(
                        s.letters().iter().map(|l| Letter::new(&name(&l.gen, &l.coord), l.exp)),
                    ));
                }
            }
        }
        Presentation::new(gens, rels).expect("expansion names are consistent")
    }

    /// Full expansion over a finite Γ.
    pub fn expand_all(&self) -> Result<Presentation, GroupError> {
        let all = self
            .gamma
            .elements()
            .ok_or_else(|| GroupError::Gamma("Γ is infinite; give a finite window".into()))?;
        Ok(self.expand(&all))
    }

    fn without(&self, gens: &[String]) -> OperatorPresentation {
        let rels = self
            .rels
            .iter()
            .map(|r| r.kill(gens).cyclic_reduce())
            .filter(|r| !r.is_empty())
            .collect();
        OperatorPresentation {
            gamma: self.gamma.clone(),
            gens: self.gens.iter().filter(|g| !gens.contains(g)).cloned().collect(),
            rels,
        }
    }
}

impl fmt::Display for OperatorPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gamma: {}; gens: {}; rels:", self.gamma, self.gens.join(", "))?;
        for (i, r) in self.rels.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{}", r.display(&self.gamma))?;
        }
        Ok(())
    }
}

fn parse_gamma(src: &str, pos: usize) -> Result<Gamma, GroupError> {
    let mut names = Vec::new();
    let mut moduli = Vec::new();
    for (part, p) in split_top(src, ',', pos) {
        let toks: Vec<&str> = part.split_whitespace().collect();
        match toks.as_slice() {
            [n] => {
                names.push(n.to_string());
                moduli.push(0);
            }
            [n, "mod", r] => {
                let r: u64 =
                    r.parse().map_err(|_| GroupError::parse(p, format!("bad modulus '{r}'")))?;
                if r < 2 {
                    return Err(GroupError::parse(p, "modulus must be at least 2"));
                }
                names.push(n.to_string());
                moduli.push(r);
            }
            _ => return Err(GroupError::parse(p, "expected 'name' or 'name mod r'")),
        }
    }
    Gamma::new(names, moduli)
}

/// The Γ-group presentation of the derived group: the same generators and
/// the δ-rewrite of each relator.
pub fn operator_presentation(
    p: &Presentation,
    action: &Action,
) -> Result<OperatorPresentation, GroupError> {
    for g in p.gens() {
        action.image(g)?;
    }
    let rels = p.rels().iter().map(|r| delta_rewrite(r, action)).collect::<Result<_, _>>()?;
    Ok(OperatorPresentation { gamma: action.gamma.clone(), gens: p.gens().to_vec(), rels })
}

/// Kills the named orbit generators. With `coords = None` whole orbits are
/// killed and a Γ-group remains. Otherwise Γ must be finite: the derived
/// group is expanded and only `g` at the listed coordinates is killed.
pub fn kill_orbits(
    op: &OperatorPresentation,
    gens: &[&str],
    coords: Option<&[Coord]>,
) -> Result<Killed, GroupError> {
    let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
    if let Some(g) = names.iter().find(|g| !op.gens.contains(g)) {
        return Err(GroupError::UnknownGenerator(g.clone()));
    }
    match coords {
        None => Ok(Killed::Operator(op.without(&names))),
        Some(cs) => {
            let full = op.expand_all()?;
            let mut dead = Vec::new();
            for g in &names {
                for c in cs {
                    let c = op.gamma.element(&c.0)?;
                    dead.push(format!("{g}_{}", op.gamma.coord_suffix(&c)));
                }
            }
            let dead: Vec<&str> = dead.iter().map(String::as_str).collect();
            Ok(Killed::Expanded(full.kill_generators(&dead)?))
        }
    }
}

/// The generator used for the Schreier transversal `{x^i}`: the first one
/// with `chi = ±1`.
pub fn transversal_generator(p: &Presentation, chi: &BTreeMap<String, i64>) -> Option<String> {
    p.gens().iter().find(|g| chi.get(*g).is_some_and(|v| v.abs() == 1)).cloned()
}

/// Γ-group presentation (Γ = ⟨t⟩) of `ker(chi)`. When no generator maps to
/// ±1 a new generator `s` with `chi(s) = ±1` is first adjoined by a Tietze
/// move. Errors when `chi` is not onto ℤ.
pub fn rs_kernel(
    p: &Presentation,
    chi: &BTreeMap<String, i64>,
) -> Result<OperatorPresentation, GroupError> {
    for g in p.gens() {
        if !chi.contains_key(g) {
            return Err(GroupError::NoImage(g.clone()));
        }
    }
    let (p, chi) = match transversal_generator(p, chi) {
        Some(_) => (p.clone(), chi.clone()),
        None => adjoin_unit_generator(p, chi)?,
    };
    let x = transversal_generator(&p, &chi).expect("unit generator present");
    let images: Vec<(&str, i64)> = p.gens().iter().map(|g| (g.as_str(), chi[g])).collect();
    let action = Action::scalar(Gamma::free(&["t"]), &images)?;
    let op = operator_presentation(&p, &action)?;
    Ok(op.without(&[x]))
}

fn adjoin_unit_generator(
    p: &Presentation,
    chi: &BTreeMap<String, i64>,
) -> Result<(Presentation, BTreeMap<String, i64>), GroupError> {
    let mut items: Vec<(Word, i64)> = p
        .gens()
        .iter()
        .filter(|g| chi[*g] != 0)
        .map(|g| (Word::gen(g), chi[g]))
        .collect();
    loop {
        items.retain(|(_, v)| *v != 0);
        items.sort_by_key(|(_, v)| v.abs());
        match items.as_slice() {
            [] => return Err(GroupError::NotSurjective(0)),
            [(_, v), ..] if v.abs() == 1 => break,
            [(_, v)] => return Err(GroupError::NotSurjective(v.abs())),
            _ => {}
        }
        let (w0, v0) = items[0].clone();
        for item in items.iter_mut().skip(1) {
            let q = item.1.div_euclid(v0);
            item.0 = item.0.multiply(&w0.pow(-(q as i32)));
            item.1 -= q * v0;
        }
    }
    let (w, v) = items.swap_remove(0);
    let mut s = "s".to_string();
    let mut k = 1;
    while p.gens().contains(&s) {
        s = format!("s{k}");
        k += 1;
    }
    let mut gens = p.gens().to_vec();
    gens.push(s.clone());
    let mut rels = p.rels().to_vec();
    rels.push(Word::gen(&s).multiply(&w.invert()));
    let mut chi = chi.clone();
    chi.insert(s, v);
    Ok((Presentation::new(gens, rels)?, chi))
}

/// Outcome of [`hnn_free_reduction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnReduction {
    /// Number of orbit generators other than `x`.
    pub rank: usize,
    /// Every relator eliminates one orbit level and the resulting map on
    /// level-zero generators is an automorphism of the free group.
    pub success: bool,
    /// `a ↦ φ(a)` read off from `a^t = φ(a)`, when every relator has that form.
    pub monodromy: BTreeMap<String, Word>,
}

/// Kills `⟨⟨x⟩⟩` in a ℤ-group presentation coming from an HNN
/// presentation `⟨x, a_i | x a_i x⁻¹ = φ(a_i)⟩` and checks that the
/// relators `a_i^t = φ(a_i)` express every level `t^j`, `j ≠ 0`, through
/// level 0, so that the quotient is free on the `a_i`.
pub fn hnn_free_reduction(
    op: &OperatorPresentation,
    x: &str,
    p2_invertible: bool,
) -> Result<HnnReduction, GroupError> {
    if !op.gens.iter().any(|g| g == x) {
        return Err(GroupError::UnknownGenerator(x.to_string()));
    }
    if op.gamma.rank() != 1 || op.gamma.is_finite() {
        return Err(GroupError::NotHnnForm("Γ must be infinite cyclic".into()));
    }
    let killed = op.without(&[x.to_string()]);
    let others = killed.gens.clone();
    if killed.rels.len() != others.len() {
        return Err(GroupError::NotHnnForm(format!(
            "{} relators for {} generators after killing {x}",
            killed.rels.len(),
            others.len()
        )));
    }
    let mut monodromy = BTreeMap::new();
    let mut ok = true;
    for r in &killed.rels {
        match solve_level_relator(r) {
            Some((h, img)) if !monodromy.contains_key(&h) => {
                monodromy.insert(h, img);
            }
            _ => ok = false,
        }
    }
    if monodromy.len() != others.len() {
        ok = false;
    }
    let images: Vec<Word> = others.iter().filter_map(|g| monodromy.get(g).cloned()).collect();
    let success = ok && p2_invertible && is_free_basis(&images, &others);
    Ok(HnnReduction { rank: others.len(), success, monodromy })
}

/// For a relator with exactly one letter one level above all the others,
/// returns that letter's generator `h` and `φ(h)` with `h^t = φ(h)`.
fn solve_level_relator(r: &DerivedWord) -> Option<(String, Word)> {
    let levels: Vec<i64> = r.letters().iter().map(|l| l.coord.0[0]).collect();
    let lo = *levels.iter().min()?;
    let hi = *levels.iter().max()?;
    if hi != lo + 1 || levels.iter().filter(|&&l| l == hi).count() != 1 {
        return None;
    }
    let k = levels.iter().position(|&l| l == hi)?;
    let n = r.len();
    let head = &r.letters()[k];
    let rest = Word::from_letters((1..n).map(|i| {
        let l = &r.letters()[(k + i) % n];
        Letter::new(&l.gen, l.exp)
    }));
    let img = if head.exp == 1 { rest.invert() } else { rest };
    Some((head.gen.clone(), img))
}

/// Whether `words` is a basis of the free group on `gens`, decided by
/// length-reducing Nielsen moves. A `true` answer is a certificate; the
/// greedy search may miss bases that need a length-preserving move first.
pub fn is_free_basis(words: &[Word], gens: &[String]) -> bool {
    if words.len() != gens.len() {
        return false;
    }
    let mut ws: Vec<Word> = words.to_vec();
    'outer: loop {
        if ws.iter().any(Word::is_empty) {
            return false;
        }
        for i in 0..ws.len() {
            for j in 0..ws.len() {
                if i == j {
                    continue;
                }
                for e in [1, -1] {
                    let wj = ws[j].pow(e);
                    for cand in [ws[i].multiply(&wj), wj.multiply(&ws[i])] {
                        if cand.len() < ws[i].len() {
                            ws[i] = cand;
                            continue 'outer;
                        }
                    }
                }
            }
        }
        break;
    }
    let heads: BTreeSet<&str> = ws
        .iter()
        .filter(|w| w.len() == 1)
        .map(|w| w.letters()[0].gen.as_str())
        .collect();
    heads.len() == gens.len() && gens.iter().all(|g| heads.contains(g.as_str()))
}
