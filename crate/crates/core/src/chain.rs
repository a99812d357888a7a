//! Chains `F = G0 < G1 < ... < Gn` of centralizer extensions, where
//! `G(i+1) = Gi *_<g_i> Z^(r_i + 1)` and `g_i` is identified with the first
//! basis vector of the free abelian factor.
//!
//! Level `i + 1` is a two-vertex graph of groups: vertex 0 carries `Gi`,
//! vertex 1 carries `Z^(r_i + 1)`, and edge 0 runs from vertex 0 to vertex 1.
//! Elements of `Gi` enter level `i + 1` as length-zero paths at vertex 0.
//!
//! Letters: base letters are `a, b, c, ...` (skipping `t`), `x<j>` or `g<j>`,
//! or user-supplied names. The `j`-th new letter of extension `i` (both
//! 1-based) is `t<i>.<j>`; `t<i>` abbreviates `t<i>.1` and `t` abbreviates
//! `t1.1`. Extensions may also name their letters.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::basegroups::{AbVec, Word};
use crate::error::{Error, Result};
use crate::gog::{APath, GraphOfGroups, Limits};
use crate::group::{Elem, Group};
use crate::literal::{default_letter_name, free_letter, parse_expr, Interp};
use crate::pcm::{benign_check, pcm, BenignEntry, PcmAnswer, Status};
use crate::presentation::SubgroupPresentation;

/// One `extend` line: the centralized element, the number of new letters and
/// optional names for them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDef {
    pub g: String,
    pub rank: usize,
    pub names: Vec<String>,
}

/// Chain description as read from a chain file, before any element is parsed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainDef {
    pub base_rank: usize,
    pub base_names: Vec<String>,
    pub extensions: Vec<ExtensionDef>,
}

fn is_name(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

impl ChainDef {
    /// Parses the line format
    ///
    /// ```text
    /// base <k> [names ...]
    /// extend g=<word> rank <r> [names ...]
    /// ```
    ///
    /// with `#` starting a comment.
    pub fn parse(text: &str) -> Result<ChainDef> {
        let mut def: Option<ChainDef> = None;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", no + 1));
            let names = |rest: &str| -> Result<Vec<String>> {
                let rest = rest.trim();
                if rest.is_empty() {
                    return Ok(Vec::new());
                }
                let list = rest.strip_prefix("names").ok_or_else(|| bad("expected `names`"))?;
                let out: Vec<String> = list.split_whitespace().map(str::to_string).collect();
                if out.is_empty() || !out.iter().all(|n| is_name(n)) {
                    return Err(bad("bad letter names"));
                }
                Ok(out)
            };
            if let Some(rest) = line.strip_prefix("base") {
                if def.is_some() {
                    return Err(bad("duplicate `base`"));
                }
                let rest = rest.trim_start();
                let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
                let k = rest[..end].parse().map_err(|_| bad("bad base rank"))?;
                let base_names = names(&rest[end..])?;
                if !base_names.is_empty() && base_names.len() != k {
                    return Err(bad("base names must match the rank"));
                }
                def = Some(ChainDef { base_rank: k, base_names, extensions: Vec::new() });
            } else if let Some(rest) = line.strip_prefix("extend") {
                let def = def.as_mut().ok_or_else(|| bad("`extend` before `base`"))?;
                let rest = rest.trim_start();
                let rest = rest.strip_prefix("g").map(str::trim_start).and_then(|r| r.strip_prefix('='));
                let rest = rest.ok_or_else(|| bad("expected `g=<word>`"))?;
                let at = find_keyword(rest, "rank").ok_or_else(|| bad("expected `rank <r>`"))?;
                let g = rest[..at].trim().to_string();
                let tail = rest[at + 4..].trim_start();
                let end = tail.find(char::is_whitespace).unwrap_or(tail.len());
                let rank: usize = tail[..end].parse().map_err(|_| bad("bad rank"))?;
                if rank == 0 {
                    return Err(bad("rank must be at least 1"));
                }
                let names = names(&tail[end..])?;
                if !names.is_empty() && names.len() != rank {
                    return Err(bad("names must match the rank"));
                }
                def.extensions.push(ExtensionDef { g, rank, names });
            } else {
                return Err(bad("expected `base` or `extend`"));
            }
        }
        def.ok_or_else(|| Error::Parse("missing `base` line".into()))
    }
}

/// Position of `kw` as a whole word in `s`.
fn find_keyword(s: &str, kw: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    s.match_indices(kw).map(|(i, _)| i).find(|&i| {
        let before = i == 0 || bytes[i - 1].is_ascii_whitespace();
        let after = bytes.get(i + kw.len()).is_none_or(|c| c.is_ascii_whitespace());
        before && after
    })
}

#[derive(Clone, Debug)]
struct Level {
    g: Elem,
    rank: usize,
    names: Vec<String>,
    graph: Arc<GraphOfGroups>,
    group: Group,
}

/// An immutable chain of centralizer extensions.
#[derive(Clone, Debug)]
pub struct ExtensionChain {
    base_rank: usize,
    base_names: Vec<String>,
    levels: Vec<Level>,
    report: Vec<BenignEntry>,
}

impl ExtensionChain {
    pub fn build(def: &ChainDef, limits: Limits) -> Result<ExtensionChain> {
        let mut chain = ExtensionChain {
            base_rank: def.base_rank,
            base_names: def.base_names.clone(),
            levels: Vec::new(),
            report: Vec::new(),
        };
        for (i, ext) in def.extensions.iter().enumerate() {
            let g = chain.parse_element(i, &ext.g)?;
            let status = chain.root_check(i, &g)?;
            chain.report.push(BenignEntry {
                status,
                hypothesis: "cyclic-centralizer".into(),
                location: format!("g{i}"),
            });
            let lower = chain.group(i);
            let mut a = GraphOfGroups::new();
            a.set_limits(limits);
            let v0 = a.add_vertex(lower);
            let v1 = a.add_vertex(Group::Abelian { rank: ext.rank + 1 });
            a.add_edge(v0, v1, g.clone(), Elem::Ab(AbVec::unit(ext.rank + 1, 0)))?;
            a.set_base(v0);
            let graph = Arc::new(a);
            for e in benign_check(&graph) {
                chain.report.push(BenignEntry { location: format!("level{}:{}", i + 1, e.location), ..e });
            }
            let names = ext.names.clone();
            chain.levels.push(Level { g, rank: ext.rank, names, graph: graph.clone(), group: Group::Pi1(graph) });
        }
        Ok(chain)
    }

    /// Parses and builds a chain file.
    pub fn from_text(text: &str, limits: Limits) -> Result<ExtensionChain> {
        ExtensionChain::build(&ChainDef::parse(text)?, limits)
    }

    /// The index `n` of the top group `Gn`.
    pub fn top(&self) -> usize {
        self.levels.len()
    }

    pub fn base_rank(&self) -> usize {
        self.base_rank
    }

    /// Number of new letters added by extension `i` (0-based).
    pub fn extension_rank(&self, i: usize) -> usize {
        self.levels[i].rank
    }

    /// The centralized element `g_i` of `Gi`.
    pub fn centralized(&self, i: usize) -> &Elem {
        &self.levels[i].g
    }

    /// The group `Gi`.
    pub fn group(&self, i: usize) -> Group {
        match i {
            0 => Group::Free { rank: self.base_rank },
            _ => self.levels[i - 1].group.clone(),
        }
    }

    /// The graph of groups whose fundamental group is `Gi`, for `i >= 1`.
    pub fn graph(&self, i: usize) -> Option<&Arc<GraphOfGroups>> {
        i.checked_sub(1).map(|j| &self.levels[j].graph)
    }

    /// Hypothesis checks gathered while building: root checks per extension
    /// and the benign report of every level graph.
    pub fn report(&self) -> &[BenignEntry] {
        &self.report
    }

    /// Total number of letters of `Gi`.
    pub fn num_letters(&self, i: usize) -> usize {
        self.base_rank + self.levels[..i].iter().map(|l| l.rank).sum::<usize>()
    }

    fn base_name(&self, j: usize) -> String {
        if let Some(n) = self.base_names.get(j) {
            return n.clone();
        }
        match default_letter_name(j) {
            Some(n) if self.base_rank <= 19 => n,
            _ => format!("x{}", j + 1),
        }
    }

    fn ext_name(&self, i: usize, j: usize) -> String {
        self.levels[i].names.get(j).cloned().unwrap_or_else(|| format!("t{}.{}", i + 1, j + 1))
    }

    /// Letter names of `Gi` in order: base letters, then the new letters of
    /// each extension.
    pub fn letter_names(&self, i: usize) -> Vec<String> {
        let mut out: Vec<String> = (0..self.base_rank).map(|j| self.base_name(j)).collect();
        for l in 0..i {
            out.extend((0..self.levels[l].rank).map(|j| self.ext_name(l, j)));
        }
        out
    }

    /// Embeds an element of `G(from)` into `G(to)`.
    pub fn embed(&self, x: Elem, from: usize, to: usize) -> Elem {
        (from..to).fold(x, |x, _| Elem::Path(APath::vertex(0, x)))
    }

    /// New letter `j` of extension `i` (0-based), as an element of `G(i+1)`.
    fn ext_letter(&self, i: usize, j: usize) -> Elem {
        let a = &self.levels[i].graph;
        let one = a.vertex_group(0).identity();
        let unit = Elem::Ab(AbVec::unit(self.levels[i].rank + 1, j + 1));
        let p = APath::new(a, 0, vec![one.clone(), unit, one], vec![0, 1]).expect("extension letter is a valid path");
        Elem::Path(p)
    }

    /// Resolves a letter name at level `i`.
    pub fn letter(&self, i: usize, name: &str) -> Result<Elem> {
        let base = self.base_names.iter().position(|n| n == name).or_else(|| {
            if self.base_names.is_empty() {
                free_letter(name, self.base_rank)
            } else {
                None
            }
        });
        if let Some(j) = base {
            return Ok(self.embed(Elem::Word(Word::generator(j)), 0, i));
        }
        for l in 0..i {
            if let Some(j) = self.levels[l].names.iter().position(|n| n == name) {
                return Ok(self.embed(self.ext_letter(l, j), l + 1, i));
            }
        }
        if let Some((l, j)) = parse_ext_name(name) {
            if l < i && j < self.levels[l].rank && self.levels[l].names.is_empty() {
                return Ok(self.embed(self.ext_letter(l, j), l + 1, i));
            }
        }
        Err(Error::Parse(format!("unknown letter `{name}` at level {i}")))
    }

    /// Parses a word over the letters of `Gi` into a reduced element.
    pub fn parse_element(&self, i: usize, s: &str) -> Result<Elem> {
        let x = parse_expr(s)?.eval(&LevelInterp { chain: self, level: i })?;
        self.group(i).normalize(&x)
    }

    /// Prints an element of `Gi` as a word in its letters.
    pub fn print_element(&self, i: usize, x: &Elem) -> Result<String> {
        let mut atoms = Vec::new();
        self.atoms(i, x, &mut atoms)?;
        let mut merged: Vec<(String, i64)> = Vec::new();
        for (a, e) in atoms {
            match merged.last_mut() {
                Some((b, f)) if *b == a => *f += e,
                _ => merged.push((a, e)),
            }
            if merged.last().is_some_and(|(_, f)| *f == 0) {
                merged.pop();
            }
        }
        if merged.is_empty() {
            return Ok("1".into());
        }
        let parts: Vec<String> = merged.into_iter().map(|(a, e)| if e == 1 { a } else { format!("{a}^{e}") }).collect();
        Ok(parts.join(" "))
    }

    fn atoms(&self, i: usize, x: &Elem, out: &mut Vec<(String, i64)>) -> Result<()> {
        if i == 0 {
            for &l in x.as_word()?.letters() {
                out.push((self.base_name(l.unsigned_abs() as usize - 1), i64::from(l.signum())));
            }
            return Ok(());
        }
        let lv = &self.levels[i - 1];
        let p = x.as_path()?;
        let mut v = p.start();
        for (k, y) in p.elems().iter().enumerate() {
            if k > 0 {
                v = lv.graph.terminus(p.edges()[k - 1]);
            }
            if v == 0 {
                self.atoms(i - 1, y, out)?;
                continue;
            }
            let c = &y.as_ab()?.0;
            if c[0] != 0 {
                let g = self.print_element(i - 1, &lv.g)?;
                let single = !g.contains(' ') && !g.contains('^');
                out.push((if single { g } else { format!("({g})") }, c[0]));
            }
            for (j, &cj) in c.iter().enumerate().skip(1) {
                if cj != 0 {
                    out.push((self.ext_name(i - 1, j - 1), cj));
                }
            }
        }
        Ok(())
    }

    /// Whether the word `s` is trivial in `Gi`.
    pub fn word_problem(&self, i: usize, s: &str) -> Result<bool> {
        let x = self.parse_element(i, s)?;
        self.group(i).is_identity(&x)
    }

    /// Presentation of the subgroup of `Gi` generated by `gens`.
    pub fn subgroup_presentation(&self, i: usize, gens: &[Elem]) -> Result<SubgroupPresentation> {
        SubgroupPresentation::new(&self.group(i), gens)
    }

    /// Least `|m| > 0` with `g^m ∈ x H` in `Gi`, positive on ties.
    pub fn power_coset(&self, i: usize, h: &[Elem], x: &Elem, g: &Elem) -> Result<Option<i64>> {
        let group = self.group(i);
        if group.is_identity(g)? {
            return Err(Error::TrivialElement("g"));
        }
        group.subgroup(h)?.power_coset(&group.normalize(x)?, &group.normalize(g)?)
    }

    /// As [`ExtensionChain::power_coset`] for `i >= 1`, with the B-path
    /// witnessing the answer.
    pub fn power_coset_witness(&self, i: usize, h: &[Elem], x: &Elem, g: &Elem) -> Result<Option<PcmAnswer>> {
        let a = self.graph(i).ok_or_else(|| Error::NotSupported("witness paths need level 1 or above".into()))?;
        let paths = h.iter().map(|y| y.as_path().cloned()).collect::<Result<Vec<_>>>()?;
        pcm(a, &paths, x.as_path()?, g.as_path()?)
    }

    /// Checks that `g`, an element of `Gi`, is not a proper power and has
    /// cyclic centralizer, as far as that can be decided here.
    fn root_check(&self, i: usize, g: &Elem) -> Result<Status> {
        let group = self.group(i);
        if group.is_identity(g)? {
            return Err(Error::TrivialElement("g"));
        }
        if i == 0 {
            let (_, k) = g.as_word()?.root();
            if k > 1 {
                return Err(Error::ProperPower(format!("{} is a proper power", self.print_element(0, g)?)));
            }
            return Ok(Status::Pass);
        }
        let a = &self.levels[i - 1].graph;
        let (c, _) = a.cyclically_reduce(g.as_path()?)?;
        if c.is_empty() {
            if c.start() == 1 {
                return Err(Error::NotSupported("g is conjugate into a free abelian factor".into()));
            }
            let y = &c.elems()[0];
            return match self.conjugate_into_cyclic(i - 1, y)? {
                Some(true) => Err(Error::NotSupported("g is conjugate into an extended centralizer".into())),
                Some(false) => self.root_check(i - 1, y),
                None => self.root_check(i - 1, y).map(|_| Status::Assume),
            };
        }
        let n = c.len();
        if n == 2 {
            return Ok(Status::Pass);
        }
        // Bounded search: a root h with h^k = c has length n / k.
        let last = c.elems()[n].clone();
        for k in 2..=6usize {
            if n % k != 0 || (n / k) % 2 != 0 {
                continue;
            }
            let d = n / k;
            let mut elems = c.elems()[..d].to_vec();
            elems.push(last.clone());
            let h = APath::new(a, c.start(), elems, c.edges()[..d].to_vec())?;
            if a.path_equal(&a.pow(&h, k as i64)?, &c)? {
                return Err(Error::ProperPower(format!("{} is a proper power", self.print_element(i, g)?)));
            }
        }
        Ok(Status::Assume)
    }

    /// Whether `y` in `Gj` is conjugate into `<g_j>`: decided exactly in the
    /// free group, unknown (`None`) above it.
    fn conjugate_into_cyclic(&self, j: usize, y: &Elem) -> Result<Option<bool>> {
        if j > 0 {
            return Ok(None);
        }
        let (_, yc) = y.as_word()?.cyclic_decomposition();
        let (_, gc) = self.levels[j].g.as_word()?.cyclic_decomposition();
        if gc.is_empty() || yc.len() % gc.len() != 0 {
            return Ok(Some(false));
        }
        let m = (yc.len() / gc.len()) as i64;
        let found = [gc.pow(m), gc.pow(-m)].iter().any(|target| is_rotation(&yc, target));
        Ok(Some(found))
    }
}

fn is_rotation(u: &Word, v: &Word) -> bool {
    let (a, b) = (u.letters(), v.letters());
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| a[s..].iter().chain(&a[..s]).eq(b.iter())))
}

/// Parses `t<i>.<j>`, `t<i>` or `t` into 0-based `(i, j)`.
fn parse_ext_name(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix('t')?;
    if rest.is_empty() {
        return Some((0, 0));
    }
    let (i, j) = match rest.split_once('.') {
        Some((i, j)) => (i.parse::<usize>().ok()?, j.parse::<usize>().ok()?),
        None => (rest.parse::<usize>().ok()?, 1),
    };
    (i >= 1 && j >= 1).then(|| (i - 1, j - 1))
}

struct LevelInterp<'a> {
    chain: &'a ExtensionChain,
    level: usize,
}

impl Interp for LevelInterp<'_> {
    type Value = Elem;
    fn letter(&self, name: &str) -> Result<Elem> {
        self.chain.letter(self.level, name)
    }
    fn one(&self) -> Elem {
        self.chain.group(self.level).identity()
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.chain.group(self.level).mul(a, b)
    }
    fn inv(&self, a: &Elem) -> Elem {
        self.chain.group(self.level).inv(a)
    }
}
