//! PBW universal enveloping algebras, polynomial commutative Hopf algebras,
//! their mutual actions/coactions, and the bicrossed product Hopf algebra
//! `H = F ▸◂ U` with full structure maps.
//!
//! All elements are finite rational linear combinations of monomials stored
//! as exponent vectors over the declared ordered basis; products normalize by
//! bracket straightening, so every element has a unique normal form.

use crate::exactnum::{fmt_rat, Rat};
use crate::liealg::{LieAlgebra, MatchedPair};
use crate::report::{CheckRecord, Report};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Exponent vector over an ordered generator list.
pub type Expo = Vec<usize>;

/// Render one monomial, e.g. `X^2*Y` or `1`.
pub fn render_monomial(e: &Expo, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Canonical term order for display: total degree descending, then
/// descending lexicographic on the exponent vector.
fn display_order(a: &Expo, b: &Expo) -> std::cmp::Ordering {
    let da: usize = a.iter().sum();
    let db: usize = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

fn sorted_for_display<'a>(
    terms: impl Iterator<Item = (Expo, String, &'a Rat)>,
) -> Vec<(String, &'a Rat)> {
    let mut v: Vec<(Expo, String, &'a Rat)> = terms.collect();
    v.sort_by(|x, y| display_order(&x.0, &y.0));
    v.into_iter().map(|(_, s, c)| (s, c)).collect()
}

fn render_terms<'a>(
    terms: impl Iterator<Item = (String, &'a Rat)>,
) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let neg = c < &Rat::zero();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", fmt_rat(&mag), mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// An element of `U(g)` in PBW normal form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PBWElement {
    /// Monomial exponent vectors mapped to nonzero coefficients.
    pub terms: BTreeMap<Expo, Rat>,
}

impl PBWElement {
    pub fn zero() -> Self {
        PBWElement::default()
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e)
    }

    pub fn monomial(e: Expo) -> Self {
        let mut t = BTreeMap::new();
        t.insert(e, Rat::one());
        PBWElement { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Expo, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        // Re-fetch to drop cancelled terms.
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        PBWElement {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    /// The counit: coefficient of the empty monomial.
    pub fn counit(&self) -> Rat {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&k| k == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Maximal total degree among the monomials.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self, names: &[String]) -> String {
        render_terms(
            sorted_for_display(
                self.terms
                    .iter()
                    .map(|(e, c)| (e.clone(), render_monomial(e, names), c)),
            )
            .into_iter(),
        )
    }
}

fn expo_to_word(e: &Expo) -> Vec<usize> {
    let mut w = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        w.extend(std::iter::repeat(i).take(k));
    }
    w
}

fn sorted_word_to_expo(w: &[usize], n: usize) -> Expo {
    let mut e = vec![0; n];
    for &i in w {
        e[i] += 1;
    }
    e
}

/// Normal form of an arbitrary generator word via bracket straightening:
/// `x_a x_b = x_b x_a + [x_a, x_b]` applied at the first descent.
pub fn straighten_word(word: &[usize], g: &LieAlgebra) -> PBWElement {
    let n = g.dim();
    let Some(pos) = word.windows(2).position(|p| p[0] > p[1]) else {
        return PBWElement::monomial(sorted_word_to_expo(word, n));
    };
    let (a, b) = (word[pos], word[pos + 1]);
    let mut swapped = word.to_vec();
    swapped.swap(pos, pos + 1);
    let mut out = straighten_word(&swapped, g);
    for (k, c) in g.bracket(a, b).iter().enumerate() {
        if !c.is_zero() {
            let mut shorter = Vec::with_capacity(word.len() - 1);
            shorter.extend_from_slice(&word[..pos]);
            shorter.push(k);
            shorter.extend_from_slice(&word[pos + 2..]);
            let piece = straighten_word(&shorter, g).scale(c);
            out = out.add(&piece);
        }
    }
    out
}

/// Product in `U(g)` in PBW normal form.
pub fn pbw_multiply(a: &PBWElement, b: &PBWElement, g: &LieAlgebra) -> PBWElement {
    let mut out = PBWElement::zero();
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let mut word = expo_to_word(ea);
            word.extend(expo_to_word(eb));
            let prod = straighten_word(&word, g).scale(&(ca * cb));
            out = out.add(&prod);
        }
    }
    out
}

/// An element of `U ⊗ U`, `U ⊗ F`, or `F ⊗ F` — any tensor square of
/// exponent-vector algebras.
pub type Tensor2 = BTreeMap<(Expo, Expo), Rat>;

pub fn tensor2_add_term(t: &mut Tensor2, key: (Expo, Expo), c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(key).or_insert_with(Rat::zero);
    *e += c;
    t.retain(|_, v| !v.is_zero());
}

pub fn render_tensor2(t: &Tensor2, names1: &[String], names2: &[String]) -> String {
    let mut keys: Vec<(&(Expo, Expo), &Rat)> = t.iter().collect();
    keys.sort_by(|(ka, _), (kb, _)| {
        display_order(&ka.0, &kb.0).then_with(|| display_order(&ka.1, &kb.1))
    });
    render_terms(keys.into_iter().map(|((a, b), c)| {
        (
            format!("{} ⊗ {}", render_monomial(a, names1), render_monomial(b, names2)),
            c,
        )
    }))
}

fn binomial(n: usize, k: usize) -> Rat {
    let mut r = Rat::one();
    for i in 0..k {
        r *= Rat::from_integer(((n - i) as i64).into());
        r /= Rat::from_integer(((i + 1) as i64).into());
    }
    r
}

/// The coproduct of `U(g)`: generators are primitive, extension is
/// multiplicative. Both tensor legs stay in PBW normal form without
/// straightening because the factors are processed in basis order.
pub fn pbw_coproduct(u: &PBWElement, n: usize) -> Tensor2 {
    let mut out = Tensor2::new();
    for (e, c) in &u.terms {
        // Split each exponent independently with binomial weights.
        let mut splits: Vec<(Expo, Expo, Rat)> = vec![(vec![0; n], vec![0; n], Rat::one())];
        for (i, &k) in e.iter().enumerate() {
            let mut next = Vec::new();
            for (l, r, w) in &splits {
                for j in 0..=k {
                    let mut l2 = l.clone();
                    let mut r2 = r.clone();
                    l2[i] += j;
                    r2[i] += k - j;
                    next.push((l2, r2, w * binomial(k, j)));
                }
            }
            splits = next;
        }
        for (l, r, w) in splits {
            tensor2_add_term(&mut out, (l, r), &w * c);
        }
    }
    out
}

/// Iterated coproduct `Δ^{(parts−1)}` of a U-element, as a map from
/// `parts`-tuples of monomials to coefficients.
pub fn pbw_coproduct_iter(u: &PBWElement, n: usize, parts: usize) -> BTreeMap<Vec<Expo>, Rat> {
    assert!(parts >= 1);
    let mut out: BTreeMap<Vec<Expo>, Rat> = BTreeMap::new();
    if parts == 1 {
        for (e, c) in &u.terms {
            out.insert(vec![e.clone()], c.clone());
        }
        return out;
    }
    let two = pbw_coproduct(u, n);
    for ((l, r), c) in two {
        let rest = pbw_coproduct_iter(&PBWElement::monomial(r), n, parts - 1);
        for (tail, w) in rest {
            let mut key = vec![l.clone()];
            key.extend(tail);
            let entry = out.entry(key).or_insert_with(Rat::zero);
            *entry += &w * &c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// The antipode of `U(g)`: anti-homomorphic extension of `S(x) = −x`.
pub fn pbw_antipode(u: &PBWElement, g: &LieAlgebra) -> PBWElement {
    let mut out = PBWElement::zero();
    for (e, c) in &u.terms {
        let mut word = expo_to_word(e);
        word.reverse();
        let sign = if word.len() % 2 == 0 {
            c.clone()
        } else {
            -c.clone()
        };
        out = out.add(&straighten_word(&word, g).scale(&sign));
    }
    out
}

/// Mutual actions `v ▷ u ∈ U(g₁)` and `v ◁ u ∈ U(g₂)` of the enveloping
/// algebras of a matched pair, computed by straightening `i₂(v) i₁(u)` inside
/// `U(g₁ ⋈ g₂)` and projecting with the counits:
/// `▷ = (Id ⊗ ε)∘Ψ`, `◁ = (ε ⊗ Id)∘Ψ`.
pub fn mutual_actions_via_straightening(
    mp: &MatchedPair,
    v: &PBWElement,
    u: &PBWElement,
) -> (PBWElement, PBWElement) {
    let ds = mp.double_crossed_sum();
    let n1 = mp.g1.dim();
    let _n2 = mp.g2.dim();
    let mut left = PBWElement::zero(); // v ▷ u ∈ U(g₁)
    let mut right = PBWElement::zero(); // v ◁ u ∈ U(g₂)
    for (ev, cv) in &v.terms {
        for (eu, cu) in &u.terms {
            // Ambient word: g₂ letters (shifted) then g₁ letters.
            let mut word: Vec<usize> = expo_to_word(ev).iter().map(|&i| i + n1).collect();
            word.extend(expo_to_word(eu));
            let prod = straighten_word(&word, &ds).scale(&(cv * cu));
            // Each normal-form ambient monomial splits as i₁(u') i₂(v').
            for (e, c) in &prod.terms {
                let u_part: Expo = e[..n1].to_vec();
                let v_part: Expo = e[n1..].to_vec();
                if v_part.iter().all(|&k| k == 0) {
                    left.add_term(u_part.clone(), c.clone());
                }
                if u_part.iter().all(|&k| k == 0) {
                    right.add_term(v_part, c.clone());
                }
            }
        }
    }
    (left, right)
}

/// An element of a commutative polynomial algebra `F`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyElement {
    pub terms: BTreeMap<Expo, Rat>,
}

impl PolyElement {
    pub fn zero() -> Self {
        PolyElement::default()
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e)
    }

    pub fn monomial(e: Expo) -> Self {
        let mut t = BTreeMap::new();
        t.insert(e, Rat::one());
        PolyElement { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Expo, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        PolyElement {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    /// Commutative product: exponent vectors add.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Expo = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn counit(&self) -> Rat {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&k| k == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self, names: &[String]) -> String {
        render_terms(
            sorted_for_display(
                self.terms
                    .iter()
                    .map(|(e, c)| (e.clone(), render_monomial(e, names), c)),
            )
            .into_iter(),
        )
    }
}

/// A finitely generated commutative polynomial Hopf algebra.
#[derive(Debug, Clone)]
pub struct PolyHopf {
    pub gens: Vec<String>,
    /// `Δ(gen_i)` as an element of `F ⊗ F`; must be counital.
    pub coproducts: Vec<Tensor2>,
}

impl PolyHopf {
    pub fn dim_gens(&self) -> usize {
        self.gens.len()
    }

    /// The coproduct, extended multiplicatively to all of `F`.
    pub fn coproduct(&self, f: &PolyElement) -> Tensor2 {
        let n = self.dim_gens();
        let mut out = Tensor2::new();
        for (e, c) in &f.terms {
            // Product of generator coproducts, with multiplicity.
            let mut acc = Tensor2::new();
            acc.insert((vec![0; n], vec![0; n]), Rat::one());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    let mut next = Tensor2::new();
                    for ((l, r), w) in &acc {
                        for ((gl, gr), gc) in &self.coproducts[i] {
                            let nl: Expo = l.iter().zip(gl).map(|(a, b)| a + b).collect();
                            let nr: Expo = r.iter().zip(gr).map(|(a, b)| a + b).collect();
                            tensor2_add_term(&mut next, (nl, nr), w * gc);
                        }
                    }
                    acc = next;
                }
            }
            for ((l, r), w) in acc {
                tensor2_add_term(&mut out, (l, r), &w * c);
            }
        }
        out
    }

    pub fn counit(&self, f: &PolyElement) -> Rat {
        f.counit()
    }

    /// The antipode, computed degree by degree from
    /// `m(S ⊗ Id)Δ = ηε`: for a generator `g` with
    /// `Δ(g) = g⊗1 + 1⊗g + w` (`w` in lower degrees on the left leg),
    /// `S(g) = −g − Σ S(w¹)w²`, extended as an algebra map.
    pub fn antipode(&self, f: &PolyElement) -> PolyElement {
        let n = self.dim_gens();
        let mut out = PolyElement::zero();
        for (e, c) in &f.terms {
            let mut acc = PolyElement::one(n).scale(c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    acc = acc.multiply(&self.antipode_gen(i));
                }
            }
            out = out.add(&acc);
        }
        out
    }

    fn antipode_gen(&self, i: usize) -> PolyElement {
        let n = self.dim_gens();
        let g = PolyElement::generator(n, i);
        let mut s = g.scale(&-Rat::one());
        for ((l, r), c) in &self.coproducts[i] {
            let l_is_gen = l == &{
                let mut e = vec![0; n];
                e[i] = 1;
                e
            } && r.iter().all(|&k| k == 0);
            let r_is_gen = r == &{
                let mut e = vec![0; n];
                e[i] = 1;
                e
            } && l.iter().all(|&k| k == 0);
            if l_is_gen || r_is_gen {
                continue;
            }
            // Correction −S(l)·r; requires l of lower degree than the
            // generator, which holds for the primitive-plus-polynomial
            // coproducts supported here.
            let ldeg: usize = l.iter().sum();
            assert!(
                ldeg == 0 || (ldeg == 1 && l[i] == 0) || ldeg > 1,
                "unsupported coproduct shape"
            );
            let s_l = self.antipode(&PolyElement::monomial(l.clone()));
            let term = s_l.multiply(&PolyElement::monomial(r.clone())).scale(&-c.clone());
            s = s.add(&term);
        }
        s
    }
}

/// Build the commutative Hopf algebra `F` with a `U`-action by derivations.
///
/// `coproducts[i]` is `Δ(gen_i)`; `u_action[j][i]` is `X_j ▷ gen_i` for the
/// generators `X_j` of `g₁`. Counitality, coassociativity on generators, and
/// the counit axiom `ε(X ▷ f) = 0` are verified; the report carries the
/// first failing generator as witness.
pub fn polyhopf_build(
    generators: Vec<impl Into<String>>,
    coproducts: Vec<Tensor2>,
    u_action: Vec<Vec<PolyElement>>,
) -> (PolyHopf, Report) {
    let f = PolyHopf {
        gens: generators.into_iter().map(Into::into).collect(),
        coproducts,
    };
    let n = f.dim_gens();
    let mut report = Report::new();

    // Counitality: (ε⊗Id)Δ(g) = g = (Id⊗ε)Δ(g).
    let mut fail: Option<CheckRecord> = None;
    for i in 0..n {
        let mut left = PolyElement::zero();
        let mut right = PolyElement::zero();
        for ((l, r), c) in &f.coproducts[i] {
            let el = PolyElement::monomial(l.clone());
            let er = PolyElement::monomial(r.clone());
            left = left.add(&er.scale(&(c * el.counit())));
            right = right.add(&el.scale(&(c * er.counit())));
        }
        let g = PolyElement::generator(n, i);
        if left != g || right != g {
            fail = Some(CheckRecord::fail(
                "f-counit",
                f.gens[i].clone(),
                left.render(&f.gens),
                g.render(&f.gens),
            ));
            break;
        }
    }
    report.push(fail.unwrap_or_else(|| CheckRecord::pass("f-counit")));

    // Coassociativity on generators.
    let mut fail: Option<CheckRecord> = None;
    for i in 0..n {
        let mut lhs: BTreeMap<(Expo, Expo, Expo), Rat> = BTreeMap::new();
        let mut rhs: BTreeMap<(Expo, Expo, Expo), Rat> = BTreeMap::new();
        for ((l, r), c) in &f.coproducts[i] {
            for ((a, b), w) in f.coproduct(&PolyElement::monomial(l.clone())) {
                let e = lhs.entry((a, b, r.clone())).or_insert_with(Rat::zero);
                *e += &w * c;
            }
            for ((a, b), w) in f.coproduct(&PolyElement::monomial(r.clone())) {
                let e = rhs.entry((l.clone(), a, b)).or_insert_with(Rat::zero);
                *e += &w * c;
            }
        }
        lhs.retain(|_, v| !v.is_zero());
        rhs.retain(|_, v| !v.is_zero());
        if lhs != rhs {
            fail = Some(CheckRecord::fail("f-coassociativity", f.gens[i].clone(), "-", "-"));
            break;
        }
    }
    report.push(fail.unwrap_or_else(|| CheckRecord::pass("f-coassociativity")));

    // ε(X ▷ f) = 0 on generator pairs.
    let mut fail: Option<CheckRecord> = None;
    'outer: for (j, row) in u_action.iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            if !v.counit().is_zero() {
                fail = Some(CheckRecord::fail(
                    "lie-hopf-counit-action",
                    format!("(X_{j}, {})", f.gens[i]),
                    fmt_rat(&v.counit()),
                    "0",
                ));
                break 'outer;
            }
        }
    }
    report.push(fail.unwrap_or_else(|| CheckRecord::pass("lie-hopf-counit-action")));

    (f, report)
}

/// The full structural data of a Lie-Hopf pair `(F, U(g₁))`.
#[derive(Debug, Clone)]
pub struct HopfStructure {
    pub g1: LieAlgebra,
    pub f: PolyHopf,
    /// `X_j ▷ gen_i` for each `g₁`-generator and `F`-generator.
    pub u_action: Vec<Vec<PolyElement>>,
    /// `▽(X_j) ∈ U ⊗ F` on `g₁`-generators.
    pub coaction: Vec<Tensor2>,
}

impl HopfStructure {
    pub fn u_dim(&self) -> usize {
        self.g1.dim()
    }

    pub fn f_dim(&self) -> usize {
        self.f.dim_gens()
    }

    /// `X_j ▷ f` by the Leibniz rule.
    pub fn act_gen(&self, j: usize, f: &PolyElement) -> PolyElement {
        let _n = self.f_dim();
        let mut out = PolyElement::zero();
        for (e, c) in &f.terms {
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                // Replace one factor gen_i by X_j ▷ gen_i.
                let mut rest = e.clone();
                rest[i] -= 1;
                let term = self.u_action[j][i]
                    .multiply(&PolyElement::monomial(rest))
                    .scale(&(c * Rat::from_integer((k as i64).into())));
                out = out.add(&term);
            }
        }
        out
    }

    /// `u ▷ f` for a full `U`-element: words act letter by letter.
    pub fn act_u(&self, u: &PBWElement, f: &PolyElement) -> PolyElement {
        let mut out = PolyElement::zero();
        for (e, c) in &u.terms {
            let word = expo_to_word(e);
            let mut acc = f.clone();
            for &j in word.iter().rev() {
                acc = self.act_gen(j, &acc);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// The coaction `▽: U → U ⊗ F` extended inductively from the generators
    /// by `▽(g·v) = g⁽⁰⁾v⁽⁰⁾ ⊗ g⁽¹⁾v⁽¹⁾ + v⁽⁰⁾ ⊗ (g ▷ v⁽¹⁾)` for a
    /// primitive generator `g`.
    pub fn extend_coaction_mp4(&self, u: &PBWElement) -> Tensor2 {
        let mut out = Tensor2::new();
        for (e, c) in &u.terms {
            let t = self.coact_word(&expo_to_word(e));
            for ((a, b), w) in t {
                tensor2_add_term(&mut out, (a, b), &w * c);
            }
        }
        out
    }

    fn coact_word(&self, word: &[usize]) -> Tensor2 {
        let n1 = self.u_dim();
        if word.is_empty() {
            let mut t = Tensor2::new();
            t.insert((vec![0; n1], vec![0; self.f_dim()]), Rat::one());
            return t;
        }
        let g = word[0];
        let inner = self.coact_word(&word[1..]);
        let mut out = Tensor2::new();
        for ((v0, v1), cv) in &inner {
            // ▽(g) · (v⁽⁰⁾ ⊗ v⁽¹⁾): U-product on the left leg, F-product on
            // the right leg.
            for ((g0, g1), cg) in &self.coaction[g] {
                let uprod = pbw_multiply(
                    &PBWElement::monomial(g0.clone()),
                    &PBWElement::monomial(v0.clone()),
                    &self.g1,
                );
                let fmono: Expo = g1.iter().zip(v1).map(|(a, b)| a + b).collect();
                for (eu, cu) in &uprod.terms {
                    tensor2_add_term(&mut out, (eu.clone(), fmono.clone()), cv * cg * cu);
                }
            }
            // v⁽⁰⁾ ⊗ g ▷ v⁽¹⁾.
            let acted = self.act_gen(g, &PolyElement::monomial(v1.clone()));
            for (ef, cf) in &acted.terms {
                tensor2_add_term(&mut out, (v0.clone(), ef.clone()), cv * cf);
            }
        }
        out
    }

    /// Verify the Lie-Hopf axioms on generators:
    /// `Δ(X ▷ f) = X • Δ(f)` with
    /// `X • (f¹⊗f²) = X⁽⁰⁾▷f¹ ⊗ X⁽¹⁾f² + f¹ ⊗ X▷f²`, `ε(X ▷ f) = 0`, and
    /// the structure identity: `▽_g` restricted to `g₁` is a Lie algebra map
    /// into `g₁ ⊗ F` with the bracket
    /// `[X⊗f, Y⊗g] = [X,Y]⊗fg + Y⊗ε(f)X▷g − X⊗ε(g)Y▷f`.
    pub fn verify(&self) -> Report {
        let mut report = Report::new();
        let n1 = self.u_dim();
        let nf = self.f_dim();

        // ε(X▷f) = 0 and Δ(X▷f) = X•Δ(f).
        let mut fail: Option<CheckRecord> = None;
        'bullet: for j in 0..n1 {
            for i in 0..nf {
                let xf = &self.u_action[j][i];
                if !xf.counit().is_zero() {
                    fail = Some(CheckRecord::fail(
                        "lie-hopf-counit-action",
                        format!("({}, {})", self.g1.basis()[j], self.f.gens[i]),
                        fmt_rat(&xf.counit()),
                        "0",
                    ));
                    break 'bullet;
                }
                let lhs = self.f.coproduct(xf);
                // X • Δ(gen_i).
                let mut rhs = Tensor2::new();
                for ((f1, f2), c) in &self.coproducts_gen(i) {
                    // Σ X⁽⁰⁾ ▷ f¹ ⊗ X⁽¹⁾ f² over ▽(X_j).
                    for ((x0, x1), cx) in &self.coaction[j] {
                        // x0 must be a g₁-monomial acting on f¹.
                        let acted = self.act_u(&PBWElement::monomial(x0.clone()), &PolyElement::monomial(f1.clone()));
                        for (ea, ca) in &acted.terms {
                            let f2x: Expo = x1.iter().zip(f2).map(|(a, b)| a + b).collect();
                            tensor2_add_term(&mut rhs, (ea.clone(), f2x), c * cx * ca);
                        }
                    }
                    // f¹ ⊗ X ▷ f².
                    let acted = self.act_gen(j, &PolyElement::monomial(f2.clone()));
                    for (ea, ca) in &acted.terms {
                        tensor2_add_term(&mut rhs, (f1.clone(), ea.clone()), c * ca);
                    }
                }
                if lhs != rhs {
                    fail = Some(CheckRecord::fail(
                        "lie-hopf-bullet",
                        format!("({}, {})", self.g1.basis()[j], self.f.gens[i]),
                        render_tensor2(&lhs, &self.f.gens, &self.f.gens),
                        render_tensor2(&rhs, &self.f.gens, &self.f.gens),
                    ));
                    break 'bullet;
                }
            }
        }
        report.push(fail.unwrap_or_else(|| CheckRecord::pass("lie-hopf-bullet")));

        // Structure identity on the degree-one part of the coaction.
        // ▽_g(X_j) = Σ_k X_k ⊗ A[k][j]; require
        // ▽_g([X_a, X_b]) = [▽_g(X_a), ▽_g(X_b)].
        let coeff = |j: usize, k: usize| -> PolyElement {
            let mut out = PolyElement::zero();
            for ((u, f), c) in &self.coaction[j] {
                let deg: usize = u.iter().sum();
                if deg == 1 && u[k] == 1 {
                    out.add_term(f.clone(), c.clone());
                }
            }
            out
        };
        let mut fail: Option<CheckRecord> = None;
        'structure: for a in 0..n1 {
            for b in 0..n1 {
                // lhs: ▽_g([X_a, X_b]) = Σ_j c_ab^j Σ_k X_k ⊗ A[k][j].
                let mut lhs: Vec<PolyElement> = vec![PolyElement::zero(); n1];
                for (j, cj) in self.g1.bracket(a, b).iter().enumerate() {
                    if cj.is_zero() {
                        continue;
                    }
                    for (k, slot) in lhs.iter_mut().enumerate() {
                        *slot = slot.add(&coeff(j, k).scale(cj));
                    }
                }
                // rhs: [Σ X_p⊗A[p][a], Σ X_q⊗A[q][b]] with the g⊗F bracket.
                let mut rhs: Vec<PolyElement> = vec![PolyElement::zero(); n1];
                for p in 0..n1 {
                    let fa = coeff(a, p);
                    for q in 0..n1 {
                        let fb = coeff(b, q);
                        if fa.is_zero() || fb.is_zero() {
                            continue;
                        }
                        // [X_p, X_q] ⊗ fa·fb
                        for (k, ck) in self.g1.bracket(p, q).iter().enumerate() {
                            if !ck.is_zero() {
                                rhs[k] = rhs[k].add(&fa.multiply(&fb).scale(ck));
                            }
                        }
                        // X_q ⊗ ε(fa) X_p ▷ fb
                        let ea = fa.counit();
                        if !ea.is_zero() {
                            rhs[q] = rhs[q].add(&self.act_gen(p, &fb).scale(&ea));
                        }
                        // −X_p ⊗ ε(fb) X_q ▷ fa
                        let eb = fb.counit();
                        if !eb.is_zero() {
                            let t = self.act_gen(q, &fa).scale(&-eb);
                            rhs[p] = rhs[p].add(&t);
                        }
                    }
                }
                if lhs != rhs {
                    fail = Some(CheckRecord::fail(
                        "lie-hopf-structure-identity",
                        format!("({}, {})", self.g1.basis()[a], self.g1.basis()[b]),
                        "-",
                        "-",
                    ));
                    break 'structure;
                }
            }
        }
        report.push(fail.unwrap_or_else(|| CheckRecord::pass("lie-hopf-structure-identity")));

        // ▽ is a coassociative coaction on monomials of degree ≤ 3:
        // (▽ ⊗ Id_F)▽ = (Id_U ⊗ Δ_F)▽.
        let mut fail: Option<CheckRecord> = None;
        'coact: for mono in low_degree_monomials(n1, 3) {
            let u = PBWElement::monomial(mono.clone());
            let v = self.extend_coaction_mp4(&u);
            let mut lhs: BTreeMap<(Expo, Expo, Expo), Rat> = BTreeMap::new();
            for ((u0, f1), c) in &v {
                for ((u00, f0), w) in self.extend_coaction_mp4(&PBWElement::monomial(u0.clone())) {
                    let e = lhs.entry((u00, f0, f1.clone())).or_insert_with(Rat::zero);
                    *e += &w * c;
                }
            }
            let mut rhs: BTreeMap<(Expo, Expo, Expo), Rat> = BTreeMap::new();
            for ((u0, f1), c) in &v {
                for ((a, b), w) in self.f.coproduct(&PolyElement::monomial(f1.clone())) {
                    let e = rhs.entry((u0.clone(), a, b)).or_insert_with(Rat::zero);
                    *e += &w * c;
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                fail = Some(CheckRecord::fail(
                    "mp4-coaction-coassociative",
                    render_monomial(&mono, self.g1.basis()),
                    "-",
                    "-",
                ));
                break 'coact;
            }
        }
        report.push(fail.unwrap_or_else(|| CheckRecord::pass("mp4-coaction-coassociative")));

        report
    }

    fn coproducts_gen(&self, i: usize) -> Tensor2 {
        self.f.coproducts[i].clone()
    }
}

/// All monomials over `n` generators of total degree ≤ `max`.
pub fn low_degree_monomials(n: usize, max: usize) -> Vec<Expo> {
    crate::liealg::truncated_monomials(n, max)
}

/// A modular pair: a character `δ` on the `U`-generators and a group-like
/// `σ ∈ F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularPair {
    pub delta: Vec<Rat>,
    pub sigma: PolyElement,
}

/// Compute the canonical modular pair: `δ` is the trace of `ad_{g₁}`, `σ` is
/// the determinant of the degree-one `F`-coaction matrix of `g₁`.
pub fn compute_modular_pair(hs: &HopfStructure) -> ModularPair {
    let n1 = hs.u_dim();
    let delta = hs.g1.adjoint_trace_character();
    // A[k][j] = coefficient of X_k ⊗ − in ▽(X_j), degree-one part.
    let entry = |k: usize, j: usize| -> PolyElement {
        let mut out = PolyElement::zero();
        for ((u, f), c) in &hs.coaction[j] {
            let deg: usize = u.iter().sum();
            if deg == 1 && u[k] == 1 {
                out.add_term(f.clone(), c.clone());
            }
        }
        out
    };
    // Determinant by permutation expansion; n1 is small.
    let mut sigma = PolyElement::zero();
    let mut perm: Vec<usize> = (0..n1).collect();
    loop {
        let mut sign = Rat::one();
        {
            // Count inversions.
            let mut inv = 0;
            for i in 0..n1 {
                for j in (i + 1)..n1 {
                    if perm[i] > perm[j] {
                        inv += 1;
                    }
                }
            }
            if inv % 2 == 1 {
                sign = -sign;
            }
        }
        let mut prod = PolyElement::one(hs.f_dim());
        for (j, &k) in perm.iter().enumerate() {
            prod = prod.multiply(&entry(k, j));
        }
        sigma = sigma.add(&prod.scale(&sign));
        // Next permutation in lexicographic order.
        let mut i = n1.wrapping_sub(1);
        while i > 0 && perm[i - 1] >= perm[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n1 - 1;
        while perm[j] <= perm[i - 1] {
            j -= 1;
        }
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    ModularPair { delta, sigma }
}

/// An element of the bicrossed product `H = F ▸◂ U` in normal form
/// `Σ c · (f-monomial ⋈ u-monomial)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BicrossedElement {
    pub terms: BTreeMap<(Expo, Expo), Rat>,
}

impl BicrossedElement {
    pub fn zero() -> Self {
        BicrossedElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial(f: Expo, u: Expo) -> Self {
        let mut t = BTreeMap::new();
        t.insert((f, u), Rat::one());
        BicrossedElement { terms: t }
    }

    pub fn add_term(&mut self, key: (Expo, Expo), c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Rat::zero);
        *e += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        BicrossedElement {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }
}

/// The bicrossed product Hopf algebra `H = F ▸◂ U` with all structure maps.
#[derive(Debug, Clone)]
pub struct Bicrossed {
    pub hs: HopfStructure,
}

/// Build `H = F ▸◂ U`, first verifying the Lie-Hopf axioms on generators.
/// The returned report carries any axiom failure with its witness.
pub fn bicrossed_build(hs: HopfStructure) -> (Bicrossed, Report) {
    let report = hs.verify();
    (Bicrossed { hs }, report)
}

impl Bicrossed {
    pub fn f_dim(&self) -> usize {
        self.hs.f_dim()
    }

    pub fn u_dim(&self) -> usize {
        self.hs.u_dim()
    }

    pub fn one(&self) -> BicrossedElement {
        BicrossedElement::monomial(vec![0; self.f_dim()], vec![0; self.u_dim()])
    }

    pub fn from_f(&self, f: &PolyElement) -> BicrossedElement {
        let mut out = BicrossedElement::zero();
        for (e, c) in &f.terms {
            out.add_term((e.clone(), vec![0; self.u_dim()]), c.clone());
        }
        out
    }

    pub fn from_u(&self, u: &PBWElement) -> BicrossedElement {
        let mut out = BicrossedElement::zero();
        for (e, c) in &u.terms {
            out.add_term((vec![0; self.f_dim()], e.clone()), c.clone());
        }
        out
    }

    /// Generator names in declared order: `F` generators then `U` generators.
    pub fn names(&self) -> Vec<String> {
        self.hs
            .f
            .gens
            .iter()
            .cloned()
            .chain(self.hs.g1.basis().iter().cloned())
            .collect()
    }

    pub fn render(&self, x: &BicrossedElement) -> String {
        let names = self.names();
        render_terms(
            sorted_for_display(x.terms.iter().map(|((f, u), c)| {
                let joined: Expo = f.iter().chain(u).cloned().collect();
                let label = render_monomial(&joined, &names);
                (joined, label, c)
            }))
            .into_iter(),
        )
    }

    /// Product `(f ⋊ u)(g ⋊ v) = f (u⁽¹⁾ ▷ g) ⋊ u⁽²⁾ v`.
    pub fn multiply(&self, a: &BicrossedElement, b: &BicrossedElement) -> BicrossedElement {
        let n1 = self.u_dim();
        let mut out = BicrossedElement::zero();
        for ((fa, ua), ca) in &a.terms {
            let du = pbw_coproduct(&PBWElement::monomial(ua.clone()), n1);
            for ((fb, ub), cb) in &b.terms {
                for ((u1, u2), cu) in &du {
                    let acted = self
                        .hs
                        .act_u(&PBWElement::monomial(u1.clone()), &PolyElement::monomial(fb.clone()));
                    if acted.is_zero() {
                        continue;
                    }
                    let uprod = pbw_multiply(
                        &PBWElement::monomial(u2.clone()),
                        &PBWElement::monomial(ub.clone()),
                        &self.hs.g1,
                    );
                    for (ef, cf) in &acted.terms {
                        let fmono: Expo = fa.iter().zip(ef).map(|(x, y)| x + y).collect();
                        for (eu, cw) in &uprod.terms {
                            out.add_term((fmono.clone(), eu.clone()), ca * cb * cu * cf * cw);
                        }
                    }
                }
            }
        }
        out
    }

    /// Coproduct `Δ(f ⋉ u) = f⁽¹⁾ ⋉ u⁽¹⁾⁽⁰⁾ ⊗ f⁽²⁾u⁽¹⁾⁽¹⁾ ⋉ u⁽²⁾` as an
    /// element of `H ⊗ H`.
    pub fn coproduct(
        &self,
        x: &BicrossedElement,
    ) -> BTreeMap<((Expo, Expo), (Expo, Expo)), Rat> {
        let n1 = self.u_dim();
        let mut out: BTreeMap<((Expo, Expo), (Expo, Expo)), Rat> = BTreeMap::new();
        for ((f, u), c) in &x.terms {
            let df = self.hs.f.coproduct(&PolyElement::monomial(f.clone()));
            let du = pbw_coproduct(&PBWElement::monomial(u.clone()), n1);
            for ((f1, f2), cf) in &df {
                for ((u1, u2), cu) in &du {
                    let cu1 = self.hs.extend_coaction_mp4(&PBWElement::monomial(u1.clone()));
                    for ((u10, u11), cc) in &cu1 {
                        let f2m: Expo = f2.iter().zip(u11).map(|(a, b)| a + b).collect();
                        let key = ((f1.clone(), u10.clone()), (f2m, u2.clone()));
                        let e = out.entry(key).or_insert_with(Rat::zero);
                        *e += c * cf * cu * cc;
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn counit(&self, x: &BicrossedElement) -> Rat {
        x.terms
            .iter()
            .filter(|((f, u), _)| f.iter().all(|&k| k == 0) && u.iter().all(|&k| k == 0))
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// Antipode `S(f ▸◂ u) = (1 ▸◂ S(u⁽⁰⁾)) (S(f u⁽¹⁾) ▸◂ 1)`.
    pub fn antipode(&self, x: &BicrossedElement) -> BicrossedElement {
        let mut out = BicrossedElement::zero();
        for ((f, u), c) in &x.terms {
            let cu = self.hs.extend_coaction_mp4(&PBWElement::monomial(u.clone()));
            for ((u0, u1), cc) in &cu {
                let su = pbw_antipode(&PBWElement::monomial(u0.clone()), &self.hs.g1);
                let fu1: Expo = f.iter().zip(u1).map(|(a, b)| a + b).collect();
                let sf = self.hs.f.antipode(&PolyElement::monomial(fu1));
                let prod = self.multiply(&self.from_u(&su), &self.from_f(&sf));
                out = out.add(&prod.scale(&(c * cc)));
            }
        }
        out
    }
}

/// The Lie-Hopf pair behind the Schwarzian Hopf algebra `H_{1S}`:
/// `g₁ = ⟨X, Y⟩` with `[Y, X] = X`, `F = ℚ[δ₁]` with primitive `δ₁`,
/// action `X ▷ δ₁ = ½δ₁²`, `Y ▷ δ₁ = δ₁`, coaction
/// `▽(X) = X⊗1 + Y⊗δ₁`, `▽(Y) = Y⊗1`.
pub fn schwarzian_hopf() -> HopfStructure {
    use crate::exactnum::{frac, rat};
    let g1 = LieAlgebra::from_brackets(vec!["X", "Y"], [(1, 0, vec![(0, rat(1))])]);
    let mut dd = Tensor2::new();
    dd.insert((vec![1], vec![0]), Rat::one());
    dd.insert((vec![0], vec![1]), Rat::one());
    let x_act = {
        let mut p = PolyElement::zero();
        p.add_term(vec![2], frac(1, 2));
        p
    };
    let u_action = vec![vec![x_act], vec![PolyElement::generator(1, 0)]];
    let (f, report) = polyhopf_build(vec!["δ₁"], vec![dd], u_action.clone());
    assert!(report.passed(), "schwarzian F data inconsistent:\n{report}");
    let mut cx = Tensor2::new();
    cx.insert((vec![1, 0], vec![0]), Rat::one());
    cx.insert((vec![0, 1], vec![1]), Rat::one());
    let mut cy = Tensor2::new();
    cy.insert((vec![0, 1], vec![0]), Rat::one());
    HopfStructure {
        g1,
        f,
        u_action,
        coaction: vec![cx, cy],
    }
}
