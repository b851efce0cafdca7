//! Declarative session format, built-in fixtures, and the commands behind
//! the `hopfcyc` binary.
//!
//! A session file is line-oriented text with five optional sections:
//!
//! ```text
//! [lie]
//! name = sl2
//! basis = X Y Z
//! bracket Y X = X
//! bracket Z X = Y
//! bracket Z Y = Z
//!
//! [matched_pair]
//! algebra = sl2
//! g1 = X Y
//! g2 = Z
//!
//! [hopf]
//! fixture = schwarzian
//!
//! [module]
//! fixture = schwarzian-sayd
//!
//! [run]
//! checks = hopf yd ayd stability
//! max_degree = 3
//! seed = 7
//! transport = odd
//! ```
//!
//! `#` starts a comment; blank lines separate nothing.  Rational literals
//! are `p/q` or plain integers; linear combinations are `+`/`-` separated
//! terms `coeff*Name` (coefficient 1 may be omitted).  Every section also
//! accepts `fixture = <name>` referring to a built-in; `hopfcyc fixtures
//! list` enumerates them.  Parsing is exact and total: the first offending
//! token is reported with its line and column, and `parse ∘ print` is the
//! identity on parsed sessions.

use crate::cyclichom::{
    schwarzian_even_cocycle, schwarzian_even_pair, schwarzian_odd_cocycle, schwarzian_odd_pair,
    CocyclicElement, CyclicSpace, TotElement,
};
use crate::exactnum::Rat;
use crate::hopfalg::{
    bicrossed_build, compute_modular_pair, low_degree_monomials, schwarzian_hopf, Bicrossed,
    ModularPair,
};
use crate::liealg::{
    check_lie_ayd, check_lie_comodule, check_lie_stability, coadjoint_action_build, gl2,
    gl2_matched_pair, sl2, sl2_matched_pair, LieAlgebra, LieModuleComodule, MatchedPair,
};
use crate::liecohomology::{
    jara_stefan_filtration, periodic_cohomology, relative_subcomplex, render_graded_element,
    spectral_e1,
};
use crate::report::{CheckRecord, Report};
use crate::saydmod::{
    check_ayd_hopf, check_comodule_bicrossed, check_module_bicrossed, check_stability_hopf,
    check_yd, full_sayd_report, schwarzian_sayd_untwisted, twist_by_mpi, FDModule,
};
use num::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

// ----------------------------------------------------------------------
// Session specification
// ----------------------------------------------------------------------

/// A linear combination of named generators with exact coefficients, in
/// source order.
pub type LinComb = Vec<(Rat, String)>;

/// One `[lie]` section: a Lie algebra given by basis names and brackets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSection {
    pub name: String,
    pub basis: Vec<String>,
    /// `bracket A B = lincomb` lines, in source order.
    pub brackets: Vec<(String, String, LinComb)>,
}

/// The `[matched_pair]` section: either a built-in fixture or a
/// decomposition `g = g₁ ⊕ g₂` of a declared algebra.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchedPairSection {
    pub fixture: Option<String>,
    pub algebra: Option<String>,
    pub g1: Vec<String>,
    pub g2: Vec<String>,
}

/// The `[hopf]` section; only built-in bicrossed products are constructible
/// from a file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HopfSection {
    pub fixture: Option<String>,
}

/// The `[module]` section: a built-in fixture, or a truncated coadjoint /
/// trivial module over a declared algebra; `perturb` applies a documented
/// counterexample mutation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuleSection {
    pub fixture: Option<String>,
    pub algebra: Option<String>,
    /// `coadjoint` (default) or `trivial`.
    pub style: Option<String>,
    pub truncation: Option<usize>,
    pub labels: Vec<String>,
    pub perturb: Option<String>,
}

/// The `[run]` section: requested checks and command parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunSection {
    pub checks: Vec<String>,
    pub max_degree: Option<usize>,
    pub seed: Option<u64>,
    /// Tot-complex element for `transport`: `odd`, `even`, or `zero`.
    pub transport: Option<String>,
    /// Basis names of the relative subalgebra for `cohomology`.
    pub relative: Vec<String>,
}

/// A parsed session file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SessionSpec {
    pub lies: Vec<LieSection>,
    pub matched_pair: Option<MatchedPairSection>,
    pub hopf: Option<HopfSection>,
    pub module: Option<ModuleSection>,
    pub run: RunSection,
}

/// A parse failure with 1-based line and column of the offending token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

// ----------------------------------------------------------------------
// Parsing
// ----------------------------------------------------------------------

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        msg: msg.into(),
    }
}

/// Column (1-based, in characters) of the `n`-th whitespace token of `s`.
fn token_col(s: &str, n: usize) -> usize {
    let mut count = 0;
    let mut col = 1;
    let mut in_tok = false;
    for ch in s.chars() {
        if ch.is_whitespace() {
            in_tok = false;
        } else if !in_tok {
            in_tok = true;
            if count == n {
                return col;
            }
            count += 1;
        }
        col += 1;
    }
    s.chars().count() + 1
}

fn parse_rat(tok: &str, line: usize, col: usize) -> Result<Rat, ParseError> {
    Rat::from_str(tok).map_err(|_| err(line, col, format!("invalid rational literal `{tok}`")))
}

/// Parse a linear combination `c*A + B - 2*C`; `0` denotes the empty sum.
fn parse_lincomb(tokens: &[&str], text: &str, line: usize, base: usize) -> Result<LinComb, ParseError> {
    if tokens == ["0"] {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut sign = Rat::one();
    let mut expect_term = true;
    for (i, tok) in tokens.iter().enumerate() {
        let col = token_col(text, base + i);
        match *tok {
            "+" | "-" if !expect_term => {
                sign = if *tok == "-" { -Rat::one() } else { Rat::one() };
                expect_term = true;
            }
            _ if expect_term => {
                let (body, s) = match tok.strip_prefix('-') {
                    Some(rest) => (rest, -sign.clone()),
                    None => (*tok, sign.clone()),
                };
                let (coeff, name) = match body.split_once('*') {
                    Some((c, n)) => (&s * parse_rat(c, line, col)?, n),
                    None => (s, body),
                };
                if name.is_empty() {
                    return Err(err(line, col, format!("missing generator name in `{tok}`")));
                }
                out.push((coeff, name.to_string()));
                expect_term = false;
            }
            _ => {
                return Err(err(line, col, format!("expected `+` or `-`, found `{tok}`")));
            }
        }
    }
    if expect_term {
        let col = token_col(text, base + tokens.len());
        return Err(err(line, col, "dangling sign at end of linear combination"));
    }
    Ok(out)
}

/// Parse a session file.
pub fn parse_session(text: &str) -> Result<SessionSpec, ParseError> {
    #[derive(PartialEq, Clone, Copy)]
    enum Sec {
        None,
        Lie,
        MatchedPair,
        Hopf,
        Module,
        Run,
    }
    let mut spec = SessionSpec::default();
    let mut sec = Sec::None;
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(name) = trimmed.strip_prefix('[') {
            let col = token_col(content, 0);
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| err(line, col, "unterminated section header"))?;
            sec = match name {
                "lie" => {
                    spec.lies.push(LieSection {
                        name: String::new(),
                        basis: Vec::new(),
                        brackets: Vec::new(),
                    });
                    Sec::Lie
                }
                "matched_pair" => {
                    spec.matched_pair.get_or_insert_with(Default::default);
                    Sec::MatchedPair
                }
                "hopf" => {
                    spec.hopf.get_or_insert_with(Default::default);
                    Sec::Hopf
                }
                "module" => {
                    spec.module.get_or_insert_with(Default::default);
                    Sec::Module
                }
                "run" => Sec::Run,
                other => return Err(err(line, col, format!("unknown section `[{other}]`"))),
            };
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let eq = tokens.iter().position(|t| *t == "=").ok_or_else(|| {
            err(line, token_col(content, 0), "expected `key = value` or a section header")
        })?;
        let key = &tokens[..eq];
        let value = &tokens[eq + 1..];
        let kcol = token_col(content, 0);
        let vcol = token_col(content, eq + 1);
        let one_value = |what: &str| -> Result<String, ParseError> {
            match value {
                [v] => Ok((*v).to_string()),
                _ => Err(err(line, vcol, format!("`{what}` takes exactly one value"))),
            }
        };
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        match (sec, key) {
            (Sec::Lie, ["name"]) => spec.lies.last_mut().unwrap().name = one_value("name")?,
            (Sec::Lie, ["basis"]) => spec.lies.last_mut().unwrap().basis = names(value),
            (Sec::Lie, ["bracket", a, b]) => {
                let lc = parse_lincomb(value, content, line, eq + 1)?;
                spec.lies
                    .last_mut()
                    .unwrap()
                    .brackets
                    .push(((*a).to_string(), (*b).to_string(), lc));
            }
            (Sec::MatchedPair, ["fixture"]) => {
                spec.matched_pair.as_mut().unwrap().fixture = Some(one_value("fixture")?)
            }
            (Sec::MatchedPair, ["algebra"]) => {
                spec.matched_pair.as_mut().unwrap().algebra = Some(one_value("algebra")?)
            }
            (Sec::MatchedPair, ["g1"]) => spec.matched_pair.as_mut().unwrap().g1 = names(value),
            (Sec::MatchedPair, ["g2"]) => spec.matched_pair.as_mut().unwrap().g2 = names(value),
            (Sec::Hopf, ["fixture"]) => {
                spec.hopf.as_mut().unwrap().fixture = Some(one_value("fixture")?)
            }
            (Sec::Module, ["fixture"]) => {
                spec.module.as_mut().unwrap().fixture = Some(one_value("fixture")?)
            }
            (Sec::Module, ["algebra"]) => {
                spec.module.as_mut().unwrap().algebra = Some(one_value("algebra")?)
            }
            (Sec::Module, ["style"]) => {
                spec.module.as_mut().unwrap().style = Some(one_value("style")?)
            }
            (Sec::Module, ["truncation"]) => {
                let v = one_value("truncation")?;
                spec.module.as_mut().unwrap().truncation = Some(
                    v.parse()
                        .map_err(|_| err(line, vcol, format!("invalid integer `{v}`")))?,
                );
            }
            (Sec::Module, ["labels"]) => spec.module.as_mut().unwrap().labels = names(value),
            (Sec::Module, ["perturb"]) => {
                spec.module.as_mut().unwrap().perturb = Some(one_value("perturb")?)
            }
            (Sec::Run, ["checks"]) => spec.run.checks = names(value),
            (Sec::Run, ["max_degree"]) => {
                let v = one_value("max_degree")?;
                spec.run.max_degree = Some(
                    v.parse()
                        .map_err(|_| err(line, vcol, format!("invalid integer `{v}`")))?,
                );
            }
            (Sec::Run, ["seed"]) => {
                let v = one_value("seed")?;
                spec.run.seed = Some(
                    v.parse()
                        .map_err(|_| err(line, vcol, format!("invalid integer `{v}`")))?,
                );
            }
            (Sec::Run, ["transport"]) => spec.run.transport = Some(one_value("transport")?),
            (Sec::Run, ["relative"]) => spec.run.relative = names(value),
            (Sec::None, _) => {
                return Err(err(line, kcol, "content before the first section header"));
            }
            _ => {
                return Err(err(
                    line,
                    kcol,
                    format!("unknown key `{}` in this section", key.join(" ")),
                ));
            }
        }
    }
    Ok(spec)
}

// ----------------------------------------------------------------------
// Printing (canonical form; parse ∘ print = id)
// ----------------------------------------------------------------------

fn render_lincomb_src(lc: &LinComb) -> String {
    if lc.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, name)) in lc.iter().enumerate() {
        let neg = c < &Rat::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(name);
    }
    out
}

impl fmt::Display for SessionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for lie in &self.lies {
            writeln!(f, "[lie]")?;
            writeln!(f, "name = {}", lie.name)?;
            writeln!(f, "basis = {}", lie.basis.join(" "))?;
            for (a, b, lc) in &lie.brackets {
                writeln!(f, "bracket {a} {b} = {}", render_lincomb_src(lc))?;
            }
            writeln!(f)?;
        }
        if let Some(mp) = &self.matched_pair {
            writeln!(f, "[matched_pair]")?;
            if let Some(fx) = &mp.fixture {
                writeln!(f, "fixture = {fx}")?;
            }
            if let Some(a) = &mp.algebra {
                writeln!(f, "algebra = {a}")?;
            }
            if !mp.g1.is_empty() {
                writeln!(f, "g1 = {}", mp.g1.join(" "))?;
            }
            if !mp.g2.is_empty() {
                writeln!(f, "g2 = {}", mp.g2.join(" "))?;
            }
            writeln!(f)?;
        }
        if let Some(h) = &self.hopf {
            writeln!(f, "[hopf]")?;
            if let Some(fx) = &h.fixture {
                writeln!(f, "fixture = {fx}")?;
            }
            writeln!(f)?;
        }
        if let Some(m) = &self.module {
            writeln!(f, "[module]")?;
            if let Some(fx) = &m.fixture {
                writeln!(f, "fixture = {fx}")?;
            }
            if let Some(a) = &m.algebra {
                writeln!(f, "algebra = {a}")?;
            }
            if let Some(s) = &m.style {
                writeln!(f, "style = {s}")?;
            }
            if let Some(t) = m.truncation {
                writeln!(f, "truncation = {t}")?;
            }
            if !m.labels.is_empty() {
                writeln!(f, "labels = {}", m.labels.join(" "))?;
            }
            if let Some(p) = &m.perturb {
                writeln!(f, "perturb = {p}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "[run]")?;
        if !self.run.checks.is_empty() {
            writeln!(f, "checks = {}", self.run.checks.join(" "))?;
        }
        if let Some(d) = self.run.max_degree {
            writeln!(f, "max_degree = {d}")?;
        }
        if let Some(s) = self.run.seed {
            writeln!(f, "seed = {s}")?;
        }
        if let Some(t) = &self.run.transport {
            writeln!(f, "transport = {t}")?;
        }
        if !self.run.relative.is_empty() {
            writeln!(f, "relative = {}", self.run.relative.join(" "))?;
        }
        Ok(())
    }
}

// ----------------------------------------------------------------------
// Fixtures
// ----------------------------------------------------------------------

/// The built-in fixtures, as `(name, description)` pairs.
pub fn fixtures() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "sl2-split",
            "sl₂ with the matched-pair decomposition g₁ = ⟨X, Y⟩, g₂ = ⟨Z⟩",
        ),
        (
            "gl2-split",
            "gl₂ with the decomposition into upper/lower matrix-unit pairs",
        ),
        (
            "schwarzian-sayd",
            "the 4-dimensional SAYD module over the Schwarzian bicrossed product",
        ),
        (
            "sl2-truncated",
            "degree-one truncated symmetric algebra of sl₂* as a Lie module-comodule",
        ),
        (
            "odd-cocycle",
            "transport of the odd Tot-cocycle through Alexander–Whitney and Ψ",
        ),
        (
            "even-cocycle",
            "transport of the even Tot-cocycle through Alexander–Whitney and Ψ",
        ),
    ]
}

fn lie_section_of(g: &LieAlgebra, name: &str) -> LieSection {
    let mut brackets = Vec::new();
    for i in 0..g.dim() {
        for j in 0..i {
            let v = g.bracket(i, j);
            if v.iter().all(Rat::is_zero) {
                continue;
            }
            let lc: LinComb = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c.clone(), g.basis()[k].clone()))
                .collect();
            brackets.push((g.basis()[i].clone(), g.basis()[j].clone(), lc));
        }
    }
    LieSection {
        name: name.to_string(),
        basis: g.basis().to_vec(),
        brackets,
    }
}

/// The generated session for a built-in fixture name.
pub fn fixture_spec(name: &str) -> Option<SessionSpec> {
    let spec = match name {
        "sl2-split" => SessionSpec {
            lies: vec![lie_section_of(&sl2(), "sl2")],
            matched_pair: Some(MatchedPairSection {
                fixture: None,
                algebra: Some("sl2".into()),
                g1: vec!["X".into(), "Y".into()],
                g2: vec!["Z".into()],
            }),
            run: RunSection {
                checks: vec!["jacobi".into(), "matched-pair".into()],
                ..Default::default()
            },
            ..Default::default()
        },
        "gl2-split" => SessionSpec {
            lies: vec![lie_section_of(&gl2(), "gl2")],
            matched_pair: Some(MatchedPairSection {
                fixture: None,
                algebra: Some("gl2".into()),
                g1: vec!["Y^1_1".into(), "Y^1_2".into()],
                g2: vec!["Y^2_1".into(), "Y^2_2".into()],
            }),
            run: RunSection {
                checks: vec!["jacobi".into(), "matched-pair".into()],
                ..Default::default()
            },
            ..Default::default()
        },
        "schwarzian-sayd" => SessionSpec {
            hopf: Some(HopfSection {
                fixture: Some("schwarzian".into()),
            }),
            module: Some(ModuleSection {
                fixture: Some("schwarzian-sayd".into()),
                ..Default::default()
            }),
            run: RunSection {
                checks: vec![
                    "hopf".into(),
                    "module".into(),
                    "comodule".into(),
                    "yd".into(),
                    "ayd".into(),
                    "stability".into(),
                ],
                ..Default::default()
            },
            ..Default::default()
        },
        "sl2-truncated" => SessionSpec {
            lies: vec![lie_section_of(&sl2(), "sl2")],
            module: Some(ModuleSection {
                fixture: Some("sl2-truncated".into()),
                ..Default::default()
            }),
            run: RunSection {
                checks: vec![
                    "jacobi".into(),
                    "lie-comodule".into(),
                    "lie-ayd".into(),
                    "lie-stability".into(),
                ],
                ..Default::default()
            },
            ..Default::default()
        },
        "odd-cocycle" => SessionSpec {
            hopf: Some(HopfSection {
                fixture: Some("schwarzian".into()),
            }),
            module: Some(ModuleSection {
                fixture: Some("schwarzian-sayd".into()),
                ..Default::default()
            }),
            run: RunSection {
                transport: Some("odd".into()),
                ..Default::default()
            },
            ..Default::default()
        },
        "even-cocycle" => SessionSpec {
            hopf: Some(HopfSection {
                fixture: Some("schwarzian".into()),
            }),
            module: Some(ModuleSection {
                fixture: Some("schwarzian-sayd".into()),
                ..Default::default()
            }),
            run: RunSection {
                transport: Some("even".into()),
                ..Default::default()
            },
            ..Default::default()
        },
        _ => return None,
    };
    Some(spec)
}

// ----------------------------------------------------------------------
// Resolution
// ----------------------------------------------------------------------

fn resolve_lie(spec: &SessionSpec, name: &str) -> Result<LieAlgebra, String> {
    if let Some(sec) = spec.lies.iter().find(|l| l.name == name) {
        let idx = |n: &str| -> Result<usize, String> {
            sec.basis
                .iter()
                .position(|b| b == n)
                .ok_or_else(|| format!("unresolved basis name `{n}` in algebra `{name}`"))
        };
        let mut brackets = Vec::new();
        for (a, b, lc) in &sec.brackets {
            let mut terms = Vec::new();
            for (c, t) in lc {
                terms.push((idx(t)?, c.clone()));
            }
            brackets.push((idx(a)?, idx(b)?, terms));
        }
        return Ok(LieAlgebra::from_brackets(sec.basis.clone(), brackets));
    }
    match name {
        "sl2" => Ok(sl2()),
        "gl2" => Ok(gl2()),
        _ => Err(format!("unresolved Lie algebra name `{name}`")),
    }
}

fn resolve_matched_pair(spec: &SessionSpec) -> Result<MatchedPair, String> {
    let sec = spec
        .matched_pair
        .as_ref()
        .ok_or("session has no [matched_pair] section")?;
    if let Some(fx) = &sec.fixture {
        return match fx.as_str() {
            "sl2-split" => Ok(sl2_matched_pair()),
            "gl2-split" => Ok(gl2_matched_pair()),
            other => Err(format!("unknown matched-pair fixture `{other}`")),
        };
    }
    let alg = sec
        .algebra
        .as_ref()
        .ok_or("matched_pair needs `fixture` or `algebra` with `g1`/`g2`")?;
    let g = resolve_lie(spec, alg)?;
    let pick = |names: &[String]| -> Result<Vec<usize>, String> {
        names
            .iter()
            .map(|n| {
                g.basis_index(n)
                    .ok_or_else(|| format!("unresolved basis name `{n}` in `{alg}`"))
            })
            .collect()
    };
    Ok(MatchedPair::from_decomposition(&g, &pick(&sec.g1)?, &pick(&sec.g2)?))
}

/// A Hopf-level module resolution: the bicrossed product, its modular pair,
/// and the untwisted coefficient module.
struct HopfModule {
    h: Bicrossed,
    pair: ModularPair,
    m: FDModule,
}

fn resolve_hopf(spec: &SessionSpec) -> Result<(Bicrossed, ModularPair), String> {
    let sec = spec.hopf.as_ref().ok_or("session has no [hopf] section")?;
    match sec.fixture.as_deref() {
        Some("schwarzian") => {
            let hs = schwarzian_hopf();
            let pair = compute_modular_pair(&hs);
            let (h, rep) = bicrossed_build(hs);
            if !rep.passed() {
                return Err(format!("Hopf structure failed verification:\n{rep}"));
            }
            Ok((h, pair))
        }
        Some(other) => Err(format!("unknown hopf fixture `{other}`")),
        None => Err("hopf section needs `fixture = <name>`".into()),
    }
}

/// Apply a documented counterexample perturbation to the Schwarzian module.
fn apply_perturbation(m: &mut FDModule, id: &str) -> Result<(), String> {
    use crate::exactnum::rat;
    match id {
        // `1_M ◁ δ₁ := R^Y`: breaks the module axiom at (1_M, X, δ₁).
        "act-f-1m" => {
            m.f_action[0][0] = vec![rat(0), rat(0), rat(1), rat(0)];
            Ok(())
        }
        // `R^X ◁ Y := 2R^X`: breaks Yetter–Drinfeld (first witness (1_M, Y)).
        "act-u-rx-y" => {
            m.u_action[1][1] = vec![rat(0), rat(2), rat(0), rat(0)];
            Ok(())
        }
        // Drop the δ₁-leg of R^Y's F-coaction: breaks the comodule axiom.
        "coact-f-ry" => {
            m.f_coaction[2].remove(&vec![1usize]);
            Ok(())
        }
        other => Err(format!("unknown perturbation `{other}`")),
    }
}

fn resolve_hopf_module(spec: &SessionSpec) -> Result<HopfModule, String> {
    let sec = spec.module.as_ref().ok_or("session has no [module] section")?;
    match sec.fixture.as_deref() {
        Some("schwarzian-sayd") => {
            let (h, pair) = resolve_hopf(spec)?;
            let mut m = schwarzian_sayd_untwisted();
            if let Some(p) = &sec.perturb {
                apply_perturbation(&mut m, p)?;
            }
            Ok(HopfModule { h, pair, m })
        }
        Some(other) => Err(format!("`{other}` is not a Hopf-level module fixture")),
        None => Err("Hopf-level checks need `fixture = schwarzian-sayd`".into()),
    }
}

fn resolve_lie_module(spec: &SessionSpec) -> Result<(LieAlgebra, LieModuleComodule), String> {
    let sec = spec.module.as_ref().ok_or("session has no [module] section")?;
    if let Some(fx) = &sec.fixture {
        return match fx.as_str() {
            "sl2-truncated" => {
                let g = sl2();
                let m = coadjoint_action_build(
                    &g,
                    1,
                    Some(vec!["R^X".into(), "R^Y".into(), "R^Z".into()]),
                    None,
                );
                Ok((g, m))
            }
            other => Err(format!("`{other}` is not a Lie-level module fixture")),
        };
    }
    let alg = sec
        .algebra
        .as_ref()
        .ok_or("module needs `fixture` or `algebra`")?;
    let g = resolve_lie(spec, alg)?;
    match sec.style.as_deref().unwrap_or("coadjoint") {
        "coadjoint" => {
            let labels = if sec.labels.is_empty() {
                None
            } else {
                Some(sec.labels.clone())
            };
            if let Some(l) = &labels {
                if l.len() != g.dim() {
                    return Err(format!(
                        "labels count {} does not match algebra dimension {}",
                        l.len(),
                        g.dim()
                    ));
                }
            }
            Ok((
                g.clone(),
                coadjoint_action_build(&g, sec.truncation.unwrap_or(1), labels, None),
            ))
        }
        "trivial" => {
            let n = g.dim();
            let m = LieModuleComodule {
                labels: vec!["1".into()],
                action: vec![vec![vec![Rat::zero()]]; n],
                coaction: vec![Vec::new()],
                theta_mult: None,
            };
            Ok((g, m))
        }
        other => Err(format!("unknown module style `{other}`")),
    }
}

// ----------------------------------------------------------------------
// Commands
// ----------------------------------------------------------------------

/// Effective command parameters after merging `[run]` keys with CLI flags.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub max_degree: usize,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_degree: 3,
            seed: 0,
        }
    }
}

impl RunOptions {
    /// Session-file values take effect unless overridden by explicit flags.
    pub fn merged(spec: &SessionSpec, max_degree: Option<usize>, seed: Option<u64>) -> Self {
        RunOptions {
            max_degree: max_degree.or(spec.run.max_degree).unwrap_or(3),
            seed: seed.or(spec.run.seed).unwrap_or(0),
        }
    }
}

fn prefixed(prefix: &str, rep: Report) -> Report {
    let mut out = Report::new();
    for mut r in rep.records {
        r.check_id = format!("{prefix}.{}", r.check_id);
        out.push(r);
    }
    out
}

/// Run every requested axiom checker; an empty check list yields an empty
/// passing report.
pub fn cmd_verify(spec: &SessionSpec, opts: &RunOptions) -> Result<Report, String> {
    let mut report = Report::new();
    // The twisted module is computed once per session where needed.
    let mut hopf_module: Option<(HopfModule, FDModule)> = None;
    fn hopf_mod<'a>(
        cache: &'a mut Option<(HopfModule, FDModule)>,
        spec: &SessionSpec,
    ) -> Result<&'a (HopfModule, FDModule), String> {
        if cache.is_none() {
            let hm = resolve_hopf_module(spec)?;
            let twisted = twist_by_mpi(&hm.m, &hm.pair);
            *cache = Some((hm, twisted));
        }
        Ok(cache.as_ref().unwrap())
    }
    for check in &spec.run.checks {
        match check.as_str() {
            "jacobi" => {
                if spec.lies.is_empty() {
                    return Err("`jacobi` requested but no [lie] section given".into());
                }
                for sec in &spec.lies {
                    let g = resolve_lie(spec, &sec.name)?;
                    report.extend(prefixed(&sec.name, g.verify_jacobi()));
                }
            }
            "matched-pair" => {
                let mp = resolve_matched_pair(spec)?;
                report.extend(prefixed("mp", mp.verify()));
            }
            "hopf" => {
                let sec = spec.hopf.as_ref().ok_or("no [hopf] section")?;
                match sec.fixture.as_deref() {
                    Some("schwarzian") => {
                        // `bicrossed_build` re-runs the Lie-Hopf axioms and
                        // returns their report.
                        let (_, rep) = bicrossed_build(schwarzian_hopf());
                        report.extend(prefixed("hopf", rep));
                    }
                    other => {
                        return Err(format!("unknown hopf fixture `{:?}`", other));
                    }
                }
            }
            "sayd" => {
                let (hm, _) = hopf_mod(&mut hopf_module, spec)?;
                report.extend(full_sayd_report(&hm.m, &hm.pair, &hm.h));
            }
            "module" => {
                let (hm, tw) = hopf_mod(&mut hopf_module, spec)?;
                report.extend(check_module_bicrossed(tw, &hm.h));
            }
            "comodule" => {
                let (hm, tw) = hopf_mod(&mut hopf_module, spec)?;
                report.extend(check_comodule_bicrossed(tw, &hm.h));
            }
            "yd" => {
                let (hm, _) = hopf_mod(&mut hopf_module, spec)?;
                report.extend(check_yd(&hm.m, &hm.h));
            }
            "ayd" => {
                let (hm, tw) = hopf_mod(&mut hopf_module, spec)?;
                report.extend(check_ayd_hopf(tw, &hm.h));
            }
            "stability" => {
                let (hm, tw) = hopf_mod(&mut hopf_module, spec)?;
                report.extend(check_stability_hopf(tw, &hm.h));
            }
            "lie-comodule" | "lie-ayd" | "lie-stability" => {
                let (g, m) = resolve_lie_module(spec)?;
                let rep = match check.as_str() {
                    "lie-comodule" => check_lie_comodule(&m, &g),
                    "lie-ayd" => check_lie_ayd(&m, &g),
                    _ => check_lie_stability(&m, &g),
                };
                report.extend(rep);
            }
            "structure" => {
                report.extend(structure_suite(opts));
            }
            other => return Err(format!("unknown check `{other}`")),
        }
    }
    Ok(report)
}

/// Randomized cocyclic-identity suite on the Schwarzian cocyclic module:
/// `τ∂₀ = ∂_{q+1}`, `τ∂ᵢ = ∂_{i−1}τ`, `τ^{q+1} = id`, `b² = 0`, `B² = 0`,
/// `(b+B)² = 0` at degrees up to `max_degree`.
fn structure_suite(opts: &RunOptions) -> Report {
    let s = CyclicSpace::schwarzian();
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let keys = low_degree_monomials(1, 1)
        .into_iter()
        .flat_map(|f| {
            low_degree_monomials(2, 1)
                .into_iter()
                .map(move |u| (f.clone(), u))
        })
        .collect::<Vec<_>>();
    let mut rand_elem = |q: usize| {
        let mut x = CocyclicElement::zero(q);
        for _ in 0..2 {
            let k = rng.gen_range(0..s.m.dim());
            let slots = (0..q)
                .map(|_| keys[rng.gen_range(0..keys.len())].clone())
                .collect();
            let c = Rat::from_integer((rng.gen_range(-3i64..=3)).into());
            x.add_term(k, slots, c);
        }
        x
    };
    let mut report = Report::new();
    let mut record = |id: String, ok: bool| {
        report.push(if ok {
            CheckRecord::pass(id)
        } else {
            CheckRecord::fail(id, "randomized element", "lhs", "rhs")
        });
    };
    for q in 1..=opts.max_degree {
        let x = rand_elem(q);
        record(
            format!("structure.tau-face-0.q{q}"),
            s.tau(&s.face(0, &x)) == s.face(q + 1, &x),
        );
        let mut ok = true;
        for i in 1..=q {
            ok &= s.tau(&s.face(i, &x)) == s.face(i - 1, &s.tau(&x));
        }
        record(format!("structure.tau-face-i.q{q}"), ok);
        let mut t = x.clone();
        for _ in 0..=q {
            t = s.tau(&t);
        }
        record(format!("structure.tau-order.q{q}"), t == x);
        record(
            format!("structure.b-squared.q{q}"),
            s.hochschild_b(&s.hochschild_b(&x)).is_zero(),
        );
        record(
            format!("structure.bb-mixed.q{q}"),
            s.hochschild_b(&s.connes_b(&x))
                .add(&s.connes_b(&s.hochschild_b(&x)))
                .is_zero()
                && s.connes_b(&s.connes_b(&x)).is_zero(),
        );
    }
    report
}

/// Outcome of the `cohomology` command.
#[derive(Debug, Clone, Serialize)]
pub struct CohomologyOutcome {
    pub hp0: usize,
    pub hp1: usize,
    pub even_representatives: Vec<String>,
    pub odd_representatives: Vec<String>,
    /// `e1[j][i]` = dim E₁ at filtration step `j`, complex degree `i`.
    pub e1: Vec<Vec<usize>>,
}

impl fmt::Display for CohomologyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "HP0 dim {}", self.hp0)?;
        writeln!(f, "HP1 dim {}", self.hp1)?;
        for r in &self.even_representatives {
            writeln!(f, "even representative: {r}")?;
        }
        for r in &self.odd_representatives {
            writeln!(f, "odd representative: {r}")?;
        }
        for (j, row) in self.e1.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|d| d.to_string()).collect();
            writeln!(f, "E1 step {j}: {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Periodic cohomology of the (relative) perturbed Koszul complex of the
/// session's Lie-level module; refuses non-SAYD input naming the failing
/// axiom.
pub fn cmd_cohomology(spec: &SessionSpec, _opts: &RunOptions) -> Result<CohomologyOutcome, String> {
    let (g, m) = resolve_lie_module(spec)?;
    for rep in [
        check_lie_comodule(&m, &g),
        check_lie_ayd(&m, &g),
        check_lie_stability(&m, &g),
    ] {
        if let Some(fail) = rep.failures().next() {
            return Err(format!(
                "input module is not SAYD: axiom `{}` fails at {}",
                fail.check_id,
                fail.witness.as_deref().unwrap_or("-"),
            ));
        }
    }
    let h_idx: Vec<usize> = spec
        .run
        .relative
        .iter()
        .map(|n| {
            g.basis_index(n)
                .ok_or_else(|| format!("unresolved subalgebra basis name `{n}`"))
        })
        .collect::<Result<_, _>>()?;
    let cx = relative_subcomplex(&g, &h_idx, &m)?;
    let hp = periodic_cohomology(&cx);
    let filt = jara_stefan_filtration(&m);
    let e1 = spectral_e1(&cx, &filt)?;
    Ok(CohomologyOutcome {
        hp0: hp.hp0,
        hp1: hp.hp1,
        even_representatives: hp
            .even_reps
            .iter()
            .map(|r| render_graded_element(&cx, r))
            .collect(),
        odd_representatives: hp
            .odd_reps
            .iter()
            .map(|r| render_graded_element(&cx, r))
            .collect(),
        e1,
    })
}

/// Outcome of the `transport` command.
#[derive(Debug, Clone, Serialize)]
pub struct TransportOutcome {
    /// Closedness checks before (Tot) and after (diagonal) transport.
    pub records: Vec<CheckRecord>,
    /// The final cocycle in the cocyclic module, canonical syntax.
    pub cocycle: String,
}

impl TransportOutcome {
    pub fn passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }
}

impl fmt::Display for TransportOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            match r.status {
                crate::report::Status::Pass => writeln!(f, "PASS {}", r.check_id)?,
                crate::report::Status::Fail => writeln!(
                    f,
                    "FAIL {} boundary={}",
                    r.check_id,
                    r.lhs.as_deref().unwrap_or("-")
                )?,
            }
        }
        writeln!(f, "cocycle: {}", self.cocycle)
    }
}

/// Apply Alexander–Whitney then Ψ to the selected Tot-complex element,
/// verifying `b`- and `B`-closedness before and after.
pub fn cmd_transport(spec: &SessionSpec, _opts: &RunOptions) -> Result<TransportOutcome, String> {
    let which = spec
        .run
        .transport
        .as_deref()
        .ok_or("transport needs `transport = odd|even|zero` in [run]")?;
    let x: TotElement = match which {
        "odd" => schwarzian_odd_pair(),
        "even" => schwarzian_even_pair(),
        "zero" => TotElement::new(),
        other => Err(format!("unknown transport element `{other}`"))?,
    };
    // The Schwarzian is the only bicrossed product constructible here; the
    // [hopf]/[module] sections select its coefficient module.
    resolve_hopf_module(spec)?;
    let s = CyclicSpace::schwarzian();
    let mut records = Vec::new();
    let mut closed = |id: &str, boundary_zero: bool, rendered: String| {
        records.push(if boundary_zero {
            CheckRecord::pass(id)
        } else {
            CheckRecord::fail(id, "-", rendered, "0")
        });
    };
    let tb = s.tot_b(&x);
    closed("tot-b-closed", tb.is_zero(), s.render_tot(&tb));
    let tbb = s.tot_connes_b(&x);
    closed("tot-B-closed", tbb.is_zero(), s.render_tot(&tbb));
    if x.is_zero() {
        return Ok(TransportOutcome {
            records,
            cocycle: "0".to_string(),
        });
    }
    let diag = s.aw_map(&x)?;
    let y = s.psi_map(&diag)?;
    let yb = s.hochschild_b(&y);
    closed("cocycle-b-closed", yb.is_zero(), s.render_cocyclic(&yb));
    let ybb = s.connes_b(&y);
    closed("cocycle-B-closed", ybb.is_zero(), s.render_cocyclic(&ybb));
    Ok(TransportOutcome {
        records,
        cocycle: s.render_cocyclic(&y),
    })
}

/// The pinned transported cocycles, for golden comparisons.
pub fn expected_transport(which: &str) -> Option<CocyclicElement> {
    match which {
        "odd" => Some(schwarzian_odd_cocycle()),
        "even" => Some(schwarzian_even_cocycle()),
        _ => None,
    }
}
