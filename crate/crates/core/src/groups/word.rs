//! Freely reduced words and finite group presentations.
//!
//! Text grammar (whitespace is insignificant except as a token separator):
//!
//! ```text
//! presentation := "gens:" names ";" "rels:" [ relation { "," relation } ]
//! relation     := word [ "=" word ]
//! word         := "1" | token { token }
//! token        := name [ "^" int ] | NAME
//! ```
//!
//! Generator names start with a lowercase letter and continue with
//! lowercase letters, digits or `_`. Writing a name in upper case denotes
//! the inverse. When every generator is a single character, a run such as
//! `AbaB` is split into letters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::GroupError;
use crate::algebra::{abelian_invariants, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: String,
    /// Always `1` or `-1`.
    pub exp: i32,
}

impl Letter {
    pub fn new(gen: &str, exp: i32) -> Self {
        assert!(exp == 1 || exp == -1, "letter exponent must be ±1");
        Letter { gen: gen.to_string(), exp }
    }

    pub fn inverse(&self) -> Self {
        Letter { gen: self.gen.clone(), exp: -self.exp }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.exp == -other.exp
    }
}

/// Writes `name` or its inverse using the upper-case convention.
pub(crate) fn fmt_gen(f: &mut fmt::Formatter<'_>, gen: &str, exp: i32) -> fmt::Result {
    if exp == 1 {
        f.write_str(gen)
    } else if is_valid_name(gen) {
        f.write_str(&gen.to_ascii_uppercase())
    } else {
        write!(f, "{gen}^-1")
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_gen(f, &self.gen, self.exp)
    }
}

pub fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// A freely reduced word in a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(name: &str) -> Self {
        Word(vec![Letter::new(name, 1)])
    }

    /// Builds a word and freely reduces it.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|p| p.cancels(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// `[("a", 1), ("b", -1)]` style constructor; exponents may be any integer.
    pub fn from_powers(pairs: &[(&str, i32)]) -> Self {
        let mut letters = Vec::new();
        for &(g, e) in pairs {
            push_power(&mut letters, g, e);
        }
        Self::from_letters(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = Word::empty();
        for _ in 0..n.unsigned_abs() {
            acc = acc.multiply(&base);
        }
        acc
    }

    /// Strips matching letters from both ends so that the result is
    /// cyclically reduced (conjugate to the input).
    pub fn cyclic_reduce(&self) -> Word {
        let v = &self.0;
        let (mut i, mut j) = (0, v.len());
        while j > i + 1 && v[i].cancels(&v[j - 1]) {
            i += 1;
            j -= 1;
        }
        Word(v[i..j].to_vec())
    }

    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Representative of the relator's class under cyclic permutation and
    /// inversion: the least rotation of `r` or `r⁻¹`.
    pub fn canonical_relator(&self) -> Word {
        let r = self.cyclic_reduce();
        let ri = r.invert();
        (0..r.len().max(1))
            .flat_map(|k| [r.rotate(k), ri.rotate(k)])
            .min()
            .unwrap_or_default()
    }

    pub fn exponent_sum(&self, gen: &str) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.exp as i64).sum()
    }

    pub fn occurrences(&self, gen: &str) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    pub fn contains(&self, gen: &str) -> bool {
        self.0.iter().any(|l| l.gen == gen)
    }

    /// Replaces every occurrence of each mapped generator by its image word.
    pub fn substitute(&self, images: &BTreeMap<String, Word>) -> Word {
        Word::from_letters(self.0.iter().flat_map(|l| match images.get(&l.gen) {
            Some(w) if l.exp == 1 => w.0.clone(),
            Some(w) => w.invert().0,
            None => vec![l.clone()],
        }))
    }

    pub fn rename(&self, names: &BTreeMap<String, String>) -> Word {
        Word::from_letters(self.0.iter().map(|l| Letter {
            gen: names.get(&l.gen).cloned().unwrap_or_else(|| l.gen.clone()),
            exp: l.exp,
        }))
    }

    /// Deletes every letter on a generator in `gens` (setting them to 1).
    pub fn kill(&self, gens: &BTreeSet<String>) -> Word {
        Word::from_letters(self.0.iter().filter(|l| !gens.contains(&l.gen)).cloned())
    }

    /// Prefix of length `k` (as a reduced word; prefixes of reduced words are reduced).
    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `⟨gens | rels⟩`; every relator letter names a listed generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    gens: Vec<String>,
    rels: Vec<Word>,
}

impl Presentation {
    pub fn new(gens: Vec<String>, rels: Vec<Word>) -> Result<Self, GroupError> {
        let mut seen = BTreeSet::new();
        for g in &gens {
            if !seen.insert(g.as_str()) {
                return Err(GroupError::DuplicateGenerator(g.clone()));
            }
        }
        for r in &rels {
            if let Some(l) = r.letters().iter().find(|l| !seen.contains(l.gen.as_str())) {
                return Err(GroupError::UnknownGenerator(l.gen.clone()));
            }
        }
        Ok(Presentation { gens, rels })
    }

    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let text = strip_comments(text);
        let (gens, rest, rest_pos) = parse_gens_header(&text, "gens:")?;
        let rels_src = rest.trim_start();
        let off = rest_pos + (rest.len() - rels_src.len());
        let body = rels_src
            .strip_prefix("rels:")
            .ok_or_else(|| GroupError::parse(off, "expected 'rels:'"))?;
        let body_pos = off + 5;
        let mut rels = Vec::new();
        for (chunk, pos) in split_top(body, ',', body_pos) {
            if chunk.trim().is_empty() {
                if body.trim().is_empty() {
                    break;
                }
                return Err(GroupError::parse(pos, "empty relation"));
            }
            rels.push(parse_relation(chunk, pos, &gens)?);
        }
        Presentation::new(gens, rels)
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn rels(&self) -> &[Word] {
        &self.rels
    }

    /// Number of generators minus number of relators.
    pub fn deficiency(&self) -> i64 {
        self.gens.len() as i64 - self.rels.len() as i64
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    pub fn with_rels(&self, rels: Vec<Word>) -> Self {
        Presentation { gens: self.gens.clone(), rels }
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rels.len(), self.gens.len());
        for (i, r) in self.rels.iter().enumerate() {
            for (j, g) in self.gens.iter().enumerate() {
                m.set(i, j, r.exponent_sum(g).into());
            }
        }
        m
    }

    /// Invariant factors of the abelianization (0 for each free summand,
    /// factors equal to 1 dropped).
    pub fn abelian_invariants(&self) -> Vec<num_bigint::BigInt> {
        abelian_invariants(&self.exponent_matrix())
    }

    /// Quotient by the normal closure of `names`: the generators are
    /// removed and their letters deleted from every relator.
    pub fn kill_generators(&self, names: &[&str]) -> Result<Self, GroupError> {
        let set: BTreeSet<String> = names.iter().map(|s| s.to_string()).collect();
        if let Some(g) = set.iter().find(|g| !self.gens.contains(g)) {
            return Err(GroupError::UnknownGenerator(g.clone()));
        }
        let gens = self.gens.iter().filter(|g| !set.contains(*g)).cloned().collect();
        let rels = self.rels.iter().map(|r| r.kill(&set)).collect();
        Ok(Presentation { gens, rels }.reduce())
    }

    /// Cyclically reduces every relator and drops trivial and repeated ones.
    pub fn reduce(&self) -> Self {
        let mut seen = BTreeSet::new();
        let rels = self
            .rels
            .iter()
            .map(Word::cyclic_reduce)
            .filter(|r| !r.is_empty() && seen.insert(r.canonical_relator()))
            .collect();
        Presentation { gens: self.gens.clone(), rels }
    }

    /// Repeatedly eliminates a generator occurring exactly once in some
    /// relator of length at most `max_len` (unbounded when `None`). Shorter
    /// relators go first; among them the generator declared last is removed.
    pub fn eliminate(&self, max_len: Option<usize>) -> Self {
        let mut p = self.reduce();
        while let Some((ri, g)) = p.elimination_candidate(max_len) {
            let r = &p.rels[ri];
            let k = r.letters().iter().position(|l| l.gen == g).unwrap();
            let rot = r.rotate(k);
            let rest = Word(rot.letters()[1..].to_vec());
            // g^e · rest = 1
            let image = if rot.letters()[0].exp == 1 { rest.invert() } else { rest };
            let images = BTreeMap::from([(g.clone(), image)]);
            let rels = p
                .rels
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ri)
                .map(|(_, w)| w.substitute(&images))
                .collect();
            let gens = p.gens.iter().filter(|h| **h != g).cloned().collect();
            p = Presentation { gens, rels }.reduce();
        }
        p
    }

    /// Full single-generator elimination.
    pub fn simplify(&self) -> Self {
        self.eliminate(None)
    }

    fn elimination_candidate(&self, max_len: Option<usize>) -> Option<(usize, String)> {
        let mut best: Option<(usize, usize, usize)> = None; // (len, gen index, relator)
        for (ri, r) in self.rels.iter().enumerate() {
            if max_len.is_some_and(|m| r.len() > m) {
                continue;
            }
            for (gi, g) in self.gens.iter().enumerate() {
                if r.occurrences(g) != 1 {
                    continue;
                }
                let key = (r.len(), usize::MAX - gi, ri);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, gi, ri)| (ri, self.gens[usize::MAX - gi].clone()))
    }

    /// Renames generators (several may map to one name, merging them).
    pub fn rename(&self, names: &BTreeMap<String, String>) -> Self {
        let mut gens: Vec<String> = Vec::new();
        for g in &self.gens {
            let n = names.get(g).cloned().unwrap_or_else(|| g.clone());
            if !gens.contains(&n) {
                gens.push(n);
            }
        }
        let rels = self.rels.iter().map(|r| r.rename(names)).collect();
        Presentation { gens, rels }.reduce()
    }

    /// Set of canonical relators, for comparing presentations up to
    /// relator order, cyclic permutation and inversion.
    pub fn relator_set(&self) -> BTreeSet<Word> {
        self.rels
            .iter()
            .map(Word::canonical_relator)
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// Same generators (as a set) and same canonical relators.
    pub fn same_as(&self, other: &Presentation) -> bool {
        let a: BTreeSet<_> = self.gens.iter().collect();
        let b: BTreeSet<_> = other.gens.iter().collect();
        a == b && self.relator_set() == other.relator_set()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}; rels:", self.gens.join(", "))?;
        for (i, r) in self.rels.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

pub(crate) fn strip_comments(text: &str) -> String {
    // Comment bytes are blanked rather than removed so error positions stay valid.
    let mut out = String::with_capacity(text.len());
    for line in text.split_inclusive('\n') {
        match line.find('#') {
            Some(i) => {
                out.push_str(&line[..i]);
                out.extend(line[i..].chars().map(|c| if c == '\n' { '\n' } else { ' ' }));
            }
            None => out.push_str(line),
        }
    }
    out
}

/// Parses `<key> name, name, ... ;` and returns the names plus the rest.
pub(crate) fn parse_gens_header<'a>(
    text: &'a str,
    key: &str,
) -> Result<(Vec<String>, &'a str, usize), GroupError> {
    let t = text.trim_start();
    let start = text.len() - t.len();
    let body = t
        .strip_prefix(key)
        .ok_or_else(|| GroupError::parse(start, format!("expected '{key}'")))?;
    let body_pos = start + key.len();
    let semi = body
        .find(';')
        .ok_or_else(|| GroupError::parse(body_pos + body.len(), "expected ';'"))?;
    let mut gens = Vec::new();
    if !body[..semi].trim().is_empty() {
        for (name, pos) in split_top(&body[..semi], ',', body_pos) {
            let n = name.trim();
            if !is_valid_name(n) {
                let lead = name.len() - name.trim_start().len();
                return Err(GroupError::parse(pos + lead, format!("invalid generator name '{n}'")));
            }
            gens.push(n.to_string());
        }
    }
    Ok((gens, &body[semi + 1..], body_pos + semi + 1))
}

/// Splits on `sep` and returns each piece with its absolute byte offset.
pub(crate) fn split_top(s: &str, sep: char, base: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == sep {
            out.push((&s[start..i], base + start));
            start = i + c.len_utf8();
        }
    }
    out.push((&s[start..], base + start));
    out
}

fn parse_relation(src: &str, pos: usize, gens: &[String]) -> Result<Word, GroupError> {
    let parts = split_top(src, '=', pos);
    match parts.as_slice() {
        [(w, p)] => parse_word_at(w, *p, gens),
        [(l, lp), (r, rp)] => {
            let l = parse_word_at(l, *lp, gens)?;
            let r = parse_word_at(r, *rp, gens)?;
            Ok(l.multiply(&r.invert()))
        }
        _ => Err(GroupError::parse(parts[2].1 - 1, "more than one '=' in a relation")),
    }
}

/// Parses a word over the given generators.
pub fn parse_word(src: &str, gens: &[String]) -> Result<Word, GroupError> {
    parse_word_at(src, 0, gens)
}

fn parse_word_at(src: &str, base: usize, gens: &[String]) -> Result<Word, GroupError> {
    let single = gens.iter().all(|g| g.len() == 1);
    let mut letters = Vec::new();
    let mut any = false;
    for (tok, off) in tokens(src) {
        let pos = base + off;
        any = true;
        if tok == "1" {
            continue;
        }
        let (name, power) = match tok.split_once('^') {
            Some((n, p)) => {
                let k: i32 = p
                    .parse()
                    .map_err(|_| GroupError::parse(pos + n.len() + 1, format!("bad exponent '{p}'")))?;
                (n, k)
            }
            None => (tok, 1),
        };
        let resolved = resolve(name, gens);
        match resolved {
            Some((g, e)) => push_power(&mut letters, g, e * power),
            None if single && power == 1 && name.chars().all(|c| c.is_ascii_alphabetic()) => {
                for (k, c) in name.char_indices() {
                    let s = c.to_string();
                    let (g, e) = resolve(&s, gens).ok_or_else(|| {
                        GroupError::parse(pos + k, format!("unknown generator '{c}'"))
                    })?;
                    push_power(&mut letters, g, e);
                }
            }
            None => return Err(GroupError::parse(pos, format!("unknown generator '{name}'"))),
        }
    }
    if !any {
        return Err(GroupError::parse(base, "empty word (write 1 for the identity)"));
    }
    Ok(Word::from_letters(letters))
}

fn push_power(out: &mut Vec<Letter>, g: &str, e: i32) {
    let sign = if e < 0 { -1 } else { 1 };
    for _ in 0..e.unsigned_abs() {
        out.push(Letter::new(g, sign));
    }
}

fn resolve<'a>(name: &str, gens: &'a [String]) -> Option<(&'a str, i32)> {
    if let Some(g) = gens.iter().find(|g| *g == name) {
        return Some((g, 1));
    }
    let lower = name.to_ascii_lowercase();
    if lower != name {
        if let Some(g) = gens.iter().find(|g| **g == lower) {
            if g.to_ascii_uppercase() == name {
                return Some((g, -1));
            }
        }
    }
    None
}

fn tokens(s: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((&s[st..i], st));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((&s[st..], st));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn multiply_and_invert() {
        let g = ab();
        let w = parse_word("a b", &g).unwrap();
        let b_inv = parse_word("B", &g).unwrap();
        assert_eq!(w.multiply(&b_inv), Word::gen("a"));
        assert_eq!(w.invert().to_string(), "B A");
        assert_eq!(Word::empty().invert(), Word::empty());
    }

    #[test]
    fn parse_forms_agree() {
        let g = ab();
        let compact = parse_word("AbaBabABaB", &g).unwrap();
        let spaced = parse_word("A b a B a b A B a B", &g).unwrap();
        let powers = parse_word("a^-1 b a b^-1 a b a^-1 b^-1 a b^-1", &g).unwrap();
        assert_eq!(compact, spaced);
        assert_eq!(compact, powers);
        assert_eq!(parse_word("a^3 A^2", &g).unwrap(), Word::gen("a"));
    }

    #[test]
    fn presentation_round_trip() {
        let text = "gens: a, b; rels: A b a B a b A B a B";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
        let q = Presentation::parse("gens: x, a; rels:").unwrap();
        assert!(q.rels().is_empty());
        assert_eq!(Presentation::parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn relations_with_equals() {
        let p = Presentation::parse("gens: x, a, b; rels: x a X = b, x b X = b A").unwrap();
        assert_eq!(p.rels()[0].to_string(), "x a X B");
        assert_eq!(p.rels()[1].to_string(), "x b X a B");
    }

    #[test]
    fn positioned_errors() {
        match Presentation::parse("gens: a, b; rels: a c") {
            Err(GroupError::Parse { pos, .. }) => assert_eq!(pos, 20),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Presentation::parse("gens: a, B; rels: a"),
            Err(GroupError::Parse { pos: 9, .. })
        ));
        assert!(Presentation::parse("gens: a; rels: a^x").is_err());
    }

    #[test]
    fn cyclic_and_canonical() {
        let g = ab();
        let w = parse_word("a b a A B A", &g).unwrap();
        assert!(w.is_empty());
        let r = parse_word("b a B", &g).unwrap();
        assert_eq!(r.cyclic_reduce(), Word::gen("a"));
        let x = parse_word("a b A B", &g).unwrap();
        let y = parse_word("b a B A", &g).unwrap();
        assert_eq!(x.canonical_relator(), y.canonical_relator());
    }

    #[test]
    fn elimination_prefers_short_relators() {
        let p = Presentation::parse("gens: a, b, c; rels: a b C, b C").unwrap();
        let s = p.simplify();
        assert_eq!(s.gens(), ["b"]);
        assert!(s.rels().is_empty());
        let q = Presentation::parse("gens: a, b, c, d; rels: a b D C, b C").unwrap();
        let e = q.eliminate(Some(2));
        assert_eq!(e.gens(), ["a", "b", "d"]);
        assert_eq!(e.rels()[0].to_string(), "a b D B");
    }

    #[test]
    fn kill_and_abelianize() {
        let p = Presentation::parse("gens: x, a, b; rels: x a X B, x b X a B").unwrap();
        let k = p.kill_generators(&["x"]).unwrap();
        assert_eq!(k.gens(), ["a", "b"]);
        let inv: Vec<i64> = k.abelian_invariants().iter().map(|n| n.try_into().unwrap()).collect();
        assert!(inv.is_empty());
        assert!(p.kill_generators(&["z"]).is_err());
    }
}
