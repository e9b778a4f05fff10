//! Coordinates, the δ-rewrite, and normal forms in the derived group.
//!
//! The operator monoid `Γ` is a finitely generated abelian group written
//! multiplicatively: a product of infinite cyclic factors and cyclic factors
//! `⟨t | t^r⟩`. A coordinate is its exponent vector. The group `G` acts on
//! `Γ` on the right through a homomorphism `P`, `γ·g = γ P(g)`; the operator
//! action `φ_γ(g^γ') = g^{γγ'}` multiplies coordinates on the left. Since
//! `Γ` is abelian the two multiplications agree numerically, but they are
//! kept as separate operations ([`Action::act`] and [`DerivedWord::shift`]).

use std::collections::BTreeMap;
use std::fmt;

use super::word::{fmt_gen, Letter, Word};
use super::GroupError;

/// Exponent vector of an element of `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord(pub Vec<i64>);

/// The operator monoid: named factors, each free (modulus 0) or cyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    names: Vec<String>,
    moduli: Vec<u64>,
}

impl Gamma {
    pub fn new(names: Vec<String>, moduli: Vec<u64>) -> Result<Self, GroupError> {
        if names.len() != moduli.len() {
            return Err(GroupError::Gamma("one modulus per factor".into()));
        }
        if moduli.contains(&1) {
            return Err(GroupError::Gamma("modulus 1 gives a trivial factor".into()));
        }
        Ok(Gamma { names, moduli })
    }

    /// Free abelian group on the given names.
    pub fn free<S: AsRef<str>>(names: &[S]) -> Self {
        Gamma {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            moduli: vec![0; names.len()],
        }
    }

    /// `⟨name | name^r⟩`.
    pub fn cyclic(name: &str, r: u64) -> Result<Self, GroupError> {
        Gamma::new(vec![name.to_string()], vec![r])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|&m| m > 0)
    }

    pub fn identity(&self) -> Coord {
        Coord(vec![0; self.rank()])
    }

    pub fn element(&self, exps: &[i64]) -> Result<Coord, GroupError> {
        if exps.len() != self.rank() {
            return Err(GroupError::Gamma(format!(
                "coordinate has {} entries, expected {}",
                exps.len(),
                self.rank()
            )));
        }
        Ok(self.normalize(exps.to_vec()))
    }

    fn normalize(&self, mut v: Vec<i64>) -> Coord {
        for (x, &m) in v.iter_mut().zip(&self.moduli) {
            if m > 0 {
                *x = x.rem_euclid(m as i64);
            }
        }
        Coord(v)
    }

    pub fn mul(&self, a: &Coord, b: &Coord) -> Coord {
        self.normalize(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn inv(&self, a: &Coord) -> Coord {
        self.normalize(a.0.iter().map(|x| -x).collect())
    }

    pub fn pow(&self, a: &Coord, k: i64) -> Coord {
        self.normalize(a.0.iter().map(|x| x * k).collect())
    }

    pub fn is_identity(&self, a: &Coord) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    /// All elements, for finite `Γ`, in lexicographic order.
    pub fn elements(&self) -> Option<Vec<Coord>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..m as i64).map(move |k| {
                        let mut q = p.clone();
                        q.push(k);
                        q
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(Coord).collect())
    }

    /// `[t:-1]`, `[u:1,v:-1]`; empty for the identity.
    pub fn fmt_coord(&self, c: &Coord) -> String {
        let parts: Vec<String> = self
            .names
            .iter()
            .zip(&c.0)
            .filter(|(_, &e)| e != 0)
            .map(|(n, e)| format!("{n}:{e}"))
            .collect();
        if parts.is_empty() {
            String::new()
        } else {
            format!("[{}]", parts.join(","))
        }
    }

    /// Suffix used for generator names in an expanded presentation:
    /// `0`, `1`, `m1`, `2_m1`.
    pub fn coord_suffix(&self, c: &Coord) -> String {
        let parts: Vec<String> = c
            .0
            .iter()
            .map(|&e| if e < 0 { format!("m{}", -e) } else { e.to_string() })
            .collect();
        parts.join("_")
    }

    pub(crate) fn parse_coord(&self, body: &str, pos: usize) -> Result<Coord, GroupError> {
        let mut v = vec![0i64; self.rank()];
        for (part, p) in super::word::split_top(body, ',', pos) {
            let (name, exp) = part
                .split_once(':')
                .ok_or_else(|| GroupError::parse(p, "expected name:exponent"))?;
            let i = self
                .names
                .iter()
                .position(|n| n == name.trim())
                .ok_or_else(|| GroupError::parse(p, format!("unknown operator '{}'", name.trim())))?;
            let e: i64 = exp
                .trim()
                .parse()
                .map_err(|_| GroupError::parse(p + name.len() + 1, "bad exponent"))?;
            v[i] += e;
        }
        Ok(self.normalize(v))
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, &m)) in self.names.iter().zip(&self.moduli).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(n)?;
            if m > 0 {
                write!(f, " mod {m}")?;
            }
        }
        Ok(())
    }
}

/// The homomorphism `P` from generators into `Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub gamma: Gamma,
    images: BTreeMap<String, Coord>,
}

impl Action {
    pub fn new(gamma: Gamma, images: BTreeMap<String, Coord>) -> Result<Self, GroupError> {
        let images = images
            .into_iter()
            .map(|(g, c)| Ok((g, gamma.element(&c.0)?)))
            .collect::<Result<_, GroupError>>()?;
        Ok(Action { gamma, images })
    }

    /// Every listed generator maps to the single operator `t` of `gamma`
    /// raised to the given power.
    pub fn scalar<S: AsRef<str>>(gamma: Gamma, gens: &[(S, i64)]) -> Result<Self, GroupError> {
        if gamma.rank() != 1 {
            return Err(GroupError::Gamma("scalar action needs a rank-one Γ".into()));
        }
        let images = gens.iter().map(|(g, k)| (g.as_ref().to_string(), Coord(vec![*k]))).collect();
        Action::new(gamma, images)
    }

    pub fn image(&self, g: &str) -> Result<&Coord, GroupError> {
        self.images.get(g).ok_or_else(|| GroupError::NoImage(g.to_string()))
    }

    pub fn image_word(&self, w: &Word) -> Result<Coord, GroupError> {
        let mut c = self.gamma.identity();
        for l in w.letters() {
            c = self.act_letter(&c, l)?;
        }
        Ok(c)
    }

    /// Right action `γ·g = γ P(g)` of a generator.
    pub fn act(&self, c: &Coord, g: &str) -> Result<Coord, GroupError> {
        Ok(self.gamma.mul(c, self.image(g)?))
    }

    fn act_letter(&self, c: &Coord, l: &Letter) -> Result<Coord, GroupError> {
        let p = self.image(&l.gen)?;
        Ok(if l.exp == 1 { self.gamma.mul(c, p) } else { self.gamma.mul(c, &self.gamma.inv(p)) })
    }
}

/// `(g^γ)^{±1}`: a basis symbol of the derived group of a free group, or
/// its inverse.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivedLetter {
    pub gen: String,
    pub exp: i32,
    pub coord: Coord,
}

impl DerivedLetter {
    pub fn new(gen: &str, exp: i32, coord: Coord) -> Self {
        assert!(exp == 1 || exp == -1, "letter exponent must be ±1");
        DerivedLetter { gen: gen.to_string(), exp, coord }
    }

    pub fn inverse(&self) -> Self {
        DerivedLetter { exp: -self.exp, ..self.clone() }
    }

    fn cancels(&self, other: &DerivedLetter) -> bool {
        self.gen == other.gen && self.coord == other.coord && self.exp == -other.exp
    }
}

/// A word in derived letters. Not automatically reduced, so that rewrites
/// can be compared letter for letter.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivedWord(pub Vec<DerivedLetter>);

impl DerivedWord {
    pub fn letters(&self) -> &[DerivedLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &DerivedWord) -> DerivedWord {
        DerivedWord(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn inverse(&self) -> DerivedWord {
        DerivedWord(self.0.iter().rev().map(DerivedLetter::inverse).collect())
    }

    /// Operator action: every coordinate multiplied on the left by `by`.
    pub fn shift(&self, gamma: &Gamma, by: &Coord) -> DerivedWord {
        DerivedWord(
            self.0
                .iter()
                .map(|l| DerivedLetter { coord: gamma.mul(by, &l.coord), ..l.clone() })
                .collect(),
        )
    }

    /// Free reduction over the basis symbols `g^γ`.
    pub fn free_reduce(&self) -> DerivedWord {
        let mut out: Vec<DerivedLetter> = Vec::new();
        for l in &self.0 {
            if out.last().is_some_and(|p| p.cancels(l)) {
                out.pop();
            } else {
                out.push(l.clone());
            }
        }
        DerivedWord(out)
    }

    pub fn cyclic_reduce(&self) -> DerivedWord {
        let v = self.free_reduce().0;
        let (mut i, mut j) = (0, v.len());
        while j > i + 1 && v[i].cancels(&v[j - 1]) {
            i += 1;
            j -= 1;
        }
        DerivedWord(v[i..j].to_vec())
    }

    /// Deletes every letter whose generator is in `gens`.
    pub fn kill(&self, gens: &[String]) -> DerivedWord {
        DerivedWord(self.0.iter().filter(|l| !gens.contains(&l.gen)).cloned().collect())
            .free_reduce()
    }

    /// Renders with coordinates, e.g. `A[t:-1] b[t:-1] a B`.
    pub fn display<'a>(&'a self, gamma: &'a Gamma) -> impl fmt::Display + 'a {
        DisplayDerived { w: self, gamma }
    }
}

struct DisplayDerived<'a> {
    w: &'a DerivedWord,
    gamma: &'a Gamma,
}

impl fmt::Display for DisplayDerived<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.w.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            fmt_gen(f, &l.gen, l.exp)?;
            f.write_str(&self.gamma.fmt_coord(&l.coord))?;
        }
        Ok(())
    }
}

/// Parses `A[t:-1] b[t:-1] a B` against the given generators and `Γ`.
pub fn parse_derived_word(
    src: &str,
    gens: &[String],
    gamma: &Gamma,
) -> Result<DerivedWord, GroupError> {
    parse_derived_at(src, 0, gens, gamma)
}

pub(crate) fn parse_derived_at(
    src: &str,
    base: usize,
    gens: &[String],
    gamma: &Gamma,
) -> Result<DerivedWord, GroupError> {
    let mut letters = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    let mut any = false;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        any = true;
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
            i += 1;
        }
        let name = &src[start..i];
        if name.is_empty() {
            return Err(GroupError::parse(base + start, "expected a generator"));
        }
        let coord = if i < bytes.len() && bytes[i] == b'[' {
            let close = src[i..]
                .find(']')
                .ok_or_else(|| GroupError::parse(base + i, "unclosed '['"))?;
            let c = gamma.parse_coord(&src[i + 1..i + close], base + i + 1)?;
            i += close + 1;
            c
        } else {
            gamma.identity()
        };
        if name == "1" {
            continue;
        }
        let (gen, exp) = if gens.iter().any(|g| g == name) {
            (name.to_string(), 1)
        } else {
            let lower = name.to_ascii_lowercase();
            if gens.contains(&lower) && lower.to_ascii_uppercase() == name {
                (lower, -1)
            } else {
                return Err(GroupError::parse(base + start, format!("unknown generator '{name}'")));
            }
        };
        letters.push(DerivedLetter { gen, exp, coord });
    }
    if !any {
        return Err(GroupError::parse(base, "empty word (write 1 for the identity)"));
    }
    Ok(DerivedWord(letters))
}

/// `δ(w)`, from `δ(g) = g`, `δ(ḡ) = ḡ^{P(ḡ)}`, `δ(wg) = δ(w) g^{P(w)}` and
/// `δ(wḡ) = δ(w) ḡ^{P(wḡ)}`. A letter `ḡ^γ` stands for `(g^γ)^{-1}`.
pub fn delta_rewrite(w: &Word, action: &Action) -> Result<DerivedWord, GroupError> {
    let gamma = &action.gamma;
    let mut c = gamma.identity();
    let mut out = Vec::with_capacity(w.len());
    for l in w.letters() {
        let p = action.image(&l.gen)?;
        if l.exp == 1 {
            out.push(DerivedLetter::new(&l.gen, 1, c.clone()));
            c = gamma.mul(&c, p);
        } else {
            c = gamma.mul(&c, &gamma.inv(p));
            out.push(DerivedLetter::new(&l.gen, -1, c.clone()));
        }
    }
    Ok(DerivedWord(out))
}

/// `w^γ` for a nontrivial group element `w`, one factor of a normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub word: Word,
    pub coord: Coord,
}

/// Normal form `g_1^{γ_1} ⋯ g_n^{γ_n}` with `g_k ≠ 1` and
/// `γ_{k+1} ≠ γ_k·g_k`.
pub fn normal_form(w: &DerivedWord, action: &Action) -> Result<Vec<Segment>, GroupError> {
    let gamma = &action.gamma;
    let mut stack: Vec<Segment> = Vec::new();
    for l in w.letters() {
        // (g^γ)^{-1} = (ḡ)^{γ g}
        let mut seg = if l.exp == 1 {
            Segment { word: Word::gen(&l.gen), coord: l.coord.clone() }
        } else {
            Segment {
                word: Word::gen(&l.gen).invert(),
                coord: action.act(&l.coord, &l.gen)?,
            }
        };
        while let Some(top) = stack.last() {
            let end = gamma.mul(&top.coord, &action.image_word(&top.word)?);
            if end != seg.coord {
                break;
            }
            let top = stack.pop().unwrap();
            seg = Segment { word: top.word.multiply(&seg.word), coord: top.coord };
            if seg.word.is_empty() {
                break;
            }
        }
        if !seg.word.is_empty() {
            stack.push(seg);
        }
    }
    Ok(stack)
}

/// Rewrites a normal form back into derived letters: each `w^γ` becomes
/// `δ(w)` shifted by `γ`.
pub fn expand_normal_form(segs: &[Segment], action: &Action) -> Result<DerivedWord, GroupError> {
    let mut out = DerivedWord::default();
    for s in segs {
        out = out.concat(&delta_rewrite(&s.word, action)?.shift(&action.gamma, &s.coord));
    }
    Ok(out)
}
