//! Text syntax for words, vectors and paths.
//!
//! Words are whitespace-separated atoms with optional integer exponents:
//! `a b^-2 a^3`. An atom is a letter name, `1`, a parenthesised word, or a
//! commutator `[u,v] = u^-1 v^-1 u v`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::basegroups::{AbVec, Word};
use crate::error::{Error, Result};
use crate::gog::{APath, GraphOfGroups};
use crate::group::{Elem, Group};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    One,
    Letter(String),
    Product(Vec<(Expr, i64)>),
    Commutator(Box<Expr>, Box<Expr>),
}

/// How to evaluate an [`Expr`] in some group.
pub trait Interp {
    type Value: Clone;
    fn letter(&self, name: &str) -> Result<Self::Value>;
    fn one(&self) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn inv(&self, a: &Self::Value) -> Self::Value;
}

impl Expr {
    pub fn eval<I: Interp>(&self, it: &I) -> Result<I::Value> {
        match self {
            Expr::One => Ok(it.one()),
            Expr::Letter(name) => it.letter(name),
            Expr::Product(factors) => {
                let mut acc = it.one();
                for (f, e) in factors {
                    let x = f.eval(it)?;
                    let x = if *e < 0 { it.inv(&x) } else { x };
                    for _ in 0..e.unsigned_abs() {
                        acc = it.mul(&acc, &x)?;
                    }
                }
                Ok(acc)
            }
            Expr::Commutator(u, v) => {
                let (u, v) = (u.eval(it)?, v.eval(it)?);
                let a = it.mul(&it.inv(&u), &it.inv(&v))?;
                it.mul(&it.mul(&a, &u)?, &v)
            }
        }
    }

    /// Letter names in order of appearance, with repetitions.
    pub fn letters(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::One => {}
            Expr::Letter(n) => out.push(n),
            Expr::Product(fs) => fs.iter().for_each(|(f, _)| f.collect_letters(out)),
            Expr::Commutator(u, v) => {
                u.collect_letters(out);
                v.collect_letters(out);
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn is_name_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_name_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'.'
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn product(&mut self) -> Result<Expr> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if c == b')' || c == b']' || c == b',' {
                break;
            }
            let atom = self.atom()?;
            let exp = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.int()?
            } else {
                1
            };
            factors.push((atom, exp));
        }
        Ok(Expr::Product(factors))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = core::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse().map_err(|_| self.err("malformed exponent"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.product()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.product()?;
                self.expect(b',')?;
                let v = self.product()?;
                self.expect(b']')?;
                Ok(Expr::Commutator(Box::new(u), Box::new(v)))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Expr::One)
            }
            Some(c) if is_name_start(c) => {
                let start = self.pos;
                while self.pos < self.s.len() && is_name_char(self.s[self.pos]) {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.s[start..self.pos]).unwrap();
                Ok(Expr::Letter(name.to_string()))
            }
            _ => Err(self.err("unexpected character")),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() != Some(c) {
            return Err(self.err(&format!("expected `{}`", c as char)));
        }
        self.pos += 1;
        Ok(())
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let e = p.product()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Default letter names for a free group of rank at most 19: `a, b, c, ...`
/// (skipping `t`, which names extension letters).
pub fn default_letter_name(i: usize) -> Option<String> {
    const NAMES: &[u8] = b"abcdefghijklmnopqrs";
    NAMES.get(i).map(|&c| (c as char).to_string())
}

/// Resolves a free group letter name: `x<i>` or `g<i>` (1-based), or a default
/// name when the rank allows it.
pub fn free_letter(name: &str, rank: usize) -> Option<usize> {
    for prefix in ["x", "g"] {
        if let Some(rest) = name.strip_prefix(prefix) {
            if let Ok(i) = rest.parse::<usize>() {
                return (1..=rank).contains(&i).then(|| i - 1);
            }
        }
    }
    (0..rank.min(19)).find(|&i| default_letter_name(i).as_deref() == Some(name))
}

struct FreeInterp(usize);

impl Interp for FreeInterp {
    type Value = Word;
    fn letter(&self, name: &str) -> Result<Word> {
        free_letter(name, self.0).map(Word::generator).ok_or_else(|| Error::Parse(format!("unknown letter `{name}`")))
    }
    fn one(&self) -> Word {
        Word::identity()
    }
    fn mul(&self, a: &Word, b: &Word) -> Result<Word> {
        Ok(a.mul(b))
    }
    fn inv(&self, a: &Word) -> Word {
        a.inverse()
    }
}

/// Parses a word of the free group of the given rank.
pub fn parse_word(s: &str, rank: usize) -> Result<Word> {
    parse_expr(s)?.eval(&FreeInterp(rank))
}

/// Parses `(n1,...,nr)`.
pub fn parse_abvec(s: &str) -> Result<AbVec> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected `(n1,...,nr)`, got `{t}`")))?;
    if inner.trim().is_empty() {
        return Ok(AbVec(Vec::new()));
    }
    inner
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coordinate `{c}`"))))
        .collect::<Result<Vec<_>>>()
        .map(AbVec)
}

/// Parses a vertex group element: a word, a vector, or `<path>` for a
/// fundamental group vertex.
pub fn parse_elem(group: &Group, s: &str) -> Result<Elem> {
    let t = s.trim();
    let x = match group {
        Group::Free { rank } => Elem::Word(parse_word(t, *rank)?),
        Group::Abelian { .. } => Elem::Ab(parse_abvec(t)?),
        Group::Pi1(g) => {
            let inner = t
                .strip_prefix('<')
                .and_then(|r| r.strip_suffix('>'))
                .ok_or_else(|| Error::Parse(format!("expected `<path>`, got `{t}`")))?;
            let p = parse_apath(g, inner)?;
            if p.start() != g.base() || p.end() != g.base() {
                return Err(Error::Parse(format!("`{t}` is not a loop at the base vertex")));
            }
            Elem::Path(g.reduce(&p)?)
        }
    };
    group.check(&x)?;
    Ok(x)
}

/// Parses `p0 ; e<k> ; p1 ; ...`. The start vertex is the origin of the
/// first edge, or the base vertex for a length-zero path.
pub fn parse_apath(g: &GraphOfGroups, s: &str) -> Result<APath> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut last = 0;
    for (i, c) in s.char_indices() {
        match c {
            '<' => depth += 1,
            '>' => depth -= 1,
            ';' if depth == 0 => {
                parts.push(&s[last..i]);
                last = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[last..]);
    if parts.len() % 2 == 0 {
        return Err(Error::Parse(format!("path `{s}` must alternate elements and edges")));
    }
    let edges = parts
        .iter()
        .skip(1)
        .step_by(2)
        .map(|e| {
            let e = e.trim();
            e.strip_prefix('e')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k < g.num_edges())
                .ok_or_else(|| Error::Parse(format!("bad edge `{e}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut v = edges.first().map_or(g.base(), |&e| g.origin(e));
    let start = v;
    let mut elems = Vec::new();
    for (i, part) in parts.iter().step_by(2).enumerate() {
        if i > 0 {
            v = g.terminus(edges[i - 1]);
        }
        elems.push(parse_elem(g.vertex_group(v), part)?);
    }
    APath::new(g, start, elems, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        assert_eq!(parse_word("a b^-2 a^3", 2).unwrap(), Word::new([1, -2, -2, 1, 1, 1]));
        assert_eq!(parse_word("x1 x2 g1^-1", 2).unwrap(), Word::new([1, 2, -1]));
        assert_eq!(parse_word("[a,b]", 2).unwrap(), Word::new([-1, -2, 1, 2]));
        assert_eq!(parse_word("(a b)^2 1", 2).unwrap(), Word::new([1, 2, 1, 2]));
        assert_eq!(parse_word("", 2).unwrap(), Word::identity());
        assert!(parse_word("c", 2).is_err());
        assert!(parse_word("a^x", 2).is_err());
        assert!(parse_word("a )", 2).is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_abvec("(1, -2,3)").unwrap(), AbVec(alloc::vec![1, -2, 3]));
        assert!(parse_abvec("1,2").is_err());
    }
}
