//! Finite-dimensional Lie algebras, matched pairs, double crossed sums, and
//! Lie-level module/comodule structures with their (S)AYD checkers.
//!
//! Conventions:
//! - structure constants `c[i][j][k]` satisfy `[Xᵢ, Xⱼ] = Σₖ c[i][j][k] Xₖ`;
//! - module actions are right actions stored as one matrix per basis vector,
//!   acting on row coordinates;
//! - coactions are finite sums `m ↦ Σ m₍₋₁₎ ⊗ m₍₀₎` stored per basis element;
//! - failure witnesses are the first violating basis tuple in lexicographic
//!   order, so reports are deterministic.

use crate::exactnum::{fmt_rat, Rat};
use crate::report::{CheckRecord, Report};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Render a linear combination over labelled basis elements canonically.
///
/// Terms appear in basis order; coefficients `±1` print bare signs. The empty
/// combination prints as `0`.
pub fn render_lincomb(coords: &[Rat], labels: &[String]) -> String {
    let mut out = String::new();
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.clone().abs();
        let sign_neg = c < &Rat::zero();
        if out.is_empty() {
            if sign_neg {
                out.push('-');
            }
        } else if sign_neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if mag.is_one() {
            out.push_str(&labels[i]);
        } else {
            out.push_str(&format!("{}*{}", fmt_rat(&mag), labels[i]));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A finite-dimensional Lie algebra given by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    basis: Vec<String>,
    /// `c[(i, j)]` is the coordinate vector of `[Xᵢ, Xⱼ]`; absent keys are 0.
    c: BTreeMap<(usize, usize), Vec<Rat>>,
}

impl LieAlgebra {
    /// Build from a list of brackets `[Xᵢ, Xⱼ] = Σ cₖ Xₖ` given for `i < j`
    /// (or any orientation); the antisymmetric counterpart is filled in.
    pub fn from_brackets(
        basis: Vec<impl Into<String>>,
        brackets: impl IntoIterator<Item = (usize, usize, Vec<(usize, Rat)>)>,
    ) -> Self {
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        let dim = basis.len();
        let mut c = BTreeMap::new();
        for (i, j, terms) in brackets {
            assert!(i < dim && j < dim, "bracket index out of range");
            let mut v = vec![Rat::zero(); dim];
            for (k, coef) in terms {
                assert!(k < dim, "bracket target out of range");
                v[k] += coef;
            }
            let neg: Vec<Rat> = v.iter().map(|x| -x.clone()).collect();
            c.insert((i, j), v);
            c.insert((j, i), neg);
        }
        LieAlgebra { basis, c }
    }

    /// Build from raw (possibly non-antisymmetric) structure constants; used
    /// to exercise the rejection path of [`verify_jacobi`].
    pub fn from_raw_structure(
        basis: Vec<impl Into<String>>,
        c: BTreeMap<(usize, usize), Vec<Rat>>,
    ) -> Self {
        LieAlgebra {
            basis: basis.into_iter().map(Into::into).collect(),
            c,
        }
    }

    /// The abelian Lie algebra on the given basis.
    pub fn abelian(basis: Vec<impl Into<String>>) -> Self {
        Self::from_brackets(basis, [])
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// Coordinates of `[Xᵢ, Xⱼ]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<Rat> {
        self.c
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| vec![Rat::zero(); self.dim()])
    }

    /// Structure constant `c[i][j][k]`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Rat {
        self.bracket(i, j)[k].clone()
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, ck) in self.bracket(i, j).iter().enumerate() {
                    if !ck.is_zero() {
                        out[k] += xi * yj * ck;
                    }
                }
            }
        }
        out
    }

    /// Trace of the adjoint representation, as a vector of values `δ(Xᵢ)`.
    pub fn adjoint_trace_character(&self) -> Vec<Rat> {
        (0..self.dim())
            .map(|i| {
                let mut tr = Rat::zero();
                for j in 0..self.dim() {
                    tr += self.c(i, j, j);
                }
                tr
            })
            .collect()
    }

    /// Verify antisymmetry and the Jacobi identity on all basis triples.
    ///
    /// Non-antisymmetric input is rejected with the offending index pair; a
    /// Jacobi violation reports the first `(i, j, k)` in lexicographic order.
    pub fn verify_jacobi(&self) -> Report {
        let mut report = Report::new();
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.bracket(i, j);
                let rhs: Vec<Rat> = self.bracket(j, i).iter().map(|x| -x.clone()).collect();
                if lhs != rhs {
                    report.push(CheckRecord::fail(
                        "antisymmetry",
                        format!("({}, {})", self.basis[i], self.basis[j]),
                        render_lincomb(&lhs, &self.basis),
                        format!("-({})", render_lincomb(&self.bracket(j, i), &self.basis)),
                    ));
                    return report;
                }
            }
        }
        report.push(CheckRecord::pass("antisymmetry"));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // [[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj] = 0
                    let mut acc = self.bracket_vec(&self.bracket(i, j), &unit(n, k));
                    add_into(&mut acc, &self.bracket_vec(&self.bracket(j, k), &unit(n, i)));
                    add_into(&mut acc, &self.bracket_vec(&self.bracket(k, i), &unit(n, j)));
                    if !acc.iter().all(Rat::is_zero) {
                        report.push(CheckRecord::fail(
                            "jacobi",
                            format!(
                                "({}, {}, {})",
                                self.basis[i], self.basis[j], self.basis[k]
                            ),
                            render_lincomb(&acc, &self.basis),
                            "0",
                        ));
                        return report;
                    }
                }
            }
        }
        report.push(CheckRecord::pass("jacobi"));
        report
    }
}

fn unit(n: usize, k: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[k] = Rat::one();
    v
}

fn add_into(acc: &mut [Rat], v: &[Rat]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

fn scale(v: &[Rat], s: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x * s).collect()
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A matched pair `(g₁, g₂)` with cross actions `◁: g₂⊗g₁ → g₂` and
/// `▷: g₂⊗g₁ → g₁`.
#[derive(Debug, Clone)]
pub struct MatchedPair {
    pub g1: LieAlgebra,
    pub g2: LieAlgebra,
    /// `act_right[(z, x)]` = coordinates of `ζ_z ◁ X_x` in g₂.
    act_right: BTreeMap<(usize, usize), Vec<Rat>>,
    /// `act_left[(z, x)]` = coordinates of `ζ_z ▷ X_x` in g₁.
    act_left: BTreeMap<(usize, usize), Vec<Rat>>,
}

impl MatchedPair {
    pub fn new(
        g1: LieAlgebra,
        g2: LieAlgebra,
        act_right: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Rat)>)>,
        act_left: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Rat)>)>,
    ) -> Self {
        let pack = |dim: usize, it: Vec<((usize, usize), Vec<(usize, Rat)>)>| {
            let mut m = BTreeMap::new();
            for ((z, x), terms) in it {
                let mut v = vec![Rat::zero(); dim];
                for (k, c) in terms {
                    v[k] += c;
                }
                m.insert((z, x), v);
            }
            m
        };
        let ar = pack(g2.dim(), act_right.into_iter().collect());
        let al = pack(g1.dim(), act_left.into_iter().collect());
        MatchedPair {
            g1,
            g2,
            act_right: ar,
            act_left: al,
        }
    }

    /// Derive the matched pair from a decomposition `g = g₁ ⊕ g₂` of an
    /// ambient Lie algebra, via `[ζ, X] = ζ▷X + ζ◁X`.
    ///
    /// `g1_idx` and `g2_idx` select the subalgebra bases inside `g`.
    pub fn from_decomposition(g: &LieAlgebra, g1_idx: &[usize], g2_idx: &[usize]) -> Self {
        let sub_algebra = |idx: &[usize]| {
            let basis: Vec<String> = idx.iter().map(|&i| g.basis()[i].clone()).collect();
            let mut brackets = Vec::new();
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate() {
                    if a < b {
                        let br = g.bracket(i, j);
                        let terms: Vec<(usize, Rat)> = idx
                            .iter()
                            .enumerate()
                            .filter(|(_, &k)| !br[k].is_zero())
                            .map(|(t, &k)| (t, br[k].clone()))
                            .collect();
                        // A decomposition requires closure under the bracket.
                        for (k, v) in br.iter().enumerate() {
                            if !v.is_zero() {
                                assert!(
                                    idx.contains(&k),
                                    "g1/g2 selection is not a subalgebra"
                                );
                            }
                        }
                        brackets.push((a, b, terms));
                    }
                }
            }
            LieAlgebra::from_brackets(basis, brackets)
        };
        let g1 = sub_algebra(g1_idx);
        let g2 = sub_algebra(g2_idx);
        let mut act_right = Vec::new();
        let mut act_left = Vec::new();
        for (z, &zi) in g2_idx.iter().enumerate() {
            for (x, &xi) in g1_idx.iter().enumerate() {
                let br = g.bracket(zi, xi);
                let left: Vec<(usize, Rat)> = g1_idx
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| !br[k].is_zero())
                    .map(|(t, &k)| (t, br[k].clone()))
                    .collect();
                let right: Vec<(usize, Rat)> = g2_idx
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| !br[k].is_zero())
                    .map(|(t, &k)| (t, br[k].clone()))
                    .collect();
                act_left.push(((z, x), left));
                act_right.push(((z, x), right));
            }
        }
        MatchedPair::new(g1, g2, act_right, act_left)
    }

    /// `ζ_z ◁ X_x` as coordinates in g₂.
    pub fn act_right(&self, z: usize, x: usize) -> Vec<Rat> {
        self.act_right
            .get(&(z, x))
            .cloned()
            .unwrap_or_else(|| vec![Rat::zero(); self.g2.dim()])
    }

    /// `ζ_z ▷ X_x` as coordinates in g₁.
    pub fn act_left(&self, z: usize, x: usize) -> Vec<Rat> {
        self.act_left
            .get(&(z, x))
            .cloned()
            .unwrap_or_else(|| vec![Rat::zero(); self.g1.dim()])
    }

    /// Bilinear extension of `◁` to coordinate vectors.
    pub fn act_right_vec(&self, zeta: &[Rat], x: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.g2.dim()];
        for (z, cz) in zeta.iter().enumerate() {
            if cz.is_zero() {
                continue;
            }
            for (i, ci) in x.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                add_into(&mut out, &scale(&self.act_right(z, i), &(cz * ci)));
            }
        }
        out
    }

    /// Bilinear extension of `▷` to coordinate vectors.
    pub fn act_left_vec(&self, zeta: &[Rat], x: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.g1.dim()];
        for (z, cz) in zeta.iter().enumerate() {
            if cz.is_zero() {
                continue;
            }
            for (i, ci) in x.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                add_into(&mut out, &scale(&self.act_left(z, i), &(cz * ci)));
            }
        }
        out
    }

    /// Verify the four matched-pair compatibility equations on basis triples.
    pub fn verify(&self) -> Report {
        let mut report = Report::new();
        let j1 = self.g1.verify_jacobi();
        let j2 = self.g2.verify_jacobi();
        if !j1.passed() || !j2.passed() {
            report.extend(j1);
            report.extend(j2);
            return report;
        }
        let n1 = self.g1.dim();
        let n2 = self.g2.dim();
        let b1 = self.g1.basis();
        let b2 = self.g2.basis();
        let u1 = |k| unit(n1, k);
        let u2 = |k| unit(n2, k);

        // mp1: [ζ,ξ]▷X = ζ▷(ξ▷X) − ξ▷(ζ▷X)
        let mut first_fail: Option<CheckRecord> = None;
        'mp1: for z in 0..n2 {
            for w in 0..n2 {
                for x in 0..n1 {
                    let lhs = self.act_left_vec(&self.g2.bracket(z, w), &u1(x));
                    let rhs = sub(
                        &self.act_left_vec(&u2(z), &self.act_left(w, x)),
                        &self.act_left_vec(&u2(w), &self.act_left(z, x)),
                    );
                    if lhs != rhs {
                        first_fail = Some(CheckRecord::fail(
                            "matched-pair-1",
                            format!("({}, {}; {})", b2[z], b2[w], b1[x]),
                            render_lincomb(&lhs, b1),
                            render_lincomb(&rhs, b1),
                        ));
                        break 'mp1;
                    }
                }
            }
        }
        report.push(first_fail.unwrap_or_else(|| CheckRecord::pass("matched-pair-1")));

        // mp2: ζ◁[X,Y] = (ζ◁X)◁Y − (ζ◁Y)◁X
        let mut first_fail: Option<CheckRecord> = None;
        'mp2: for z in 0..n2 {
            for x in 0..n1 {
                for y in 0..n1 {
                    let lhs = self.act_right_vec(&u2(z), &self.g1.bracket(x, y));
                    let rhs = sub(
                        &self.act_right_vec(&self.act_right(z, x), &u1(y)),
                        &self.act_right_vec(&self.act_right(z, y), &u1(x)),
                    );
                    if lhs != rhs {
                        first_fail = Some(CheckRecord::fail(
                            "matched-pair-2",
                            format!("({}; {}, {})", b2[z], b1[x], b1[y]),
                            render_lincomb(&lhs, b2),
                            render_lincomb(&rhs, b2),
                        ));
                        break 'mp2;
                    }
                }
            }
        }
        report.push(first_fail.unwrap_or_else(|| CheckRecord::pass("matched-pair-2")));

        // mp3: ζ▷[X,Y] = [ζ▷X, Y] + [X, ζ▷Y] + (ζ◁X)▷Y − (ζ◁Y)▷X
        let mut first_fail: Option<CheckRecord> = None;
        'mp3: for z in 0..n2 {
            for x in 0..n1 {
                for y in 0..n1 {
                    let lhs = self.act_left_vec(&u2(z), &self.g1.bracket(x, y));
                    let mut rhs = self.g1.bracket_vec(&self.act_left(z, x), &u1(y));
                    add_into(&mut rhs, &self.g1.bracket_vec(&u1(x), &self.act_left(z, y)));
                    add_into(&mut rhs, &self.act_left_vec(&self.act_right(z, x), &u1(y)));
                    let t = self.act_left_vec(&self.act_right(z, y), &u1(x));
                    let rhs = sub(&rhs, &t);
                    if lhs != rhs {
                        first_fail = Some(CheckRecord::fail(
                            "matched-pair-3",
                            format!("({}; {}, {})", b2[z], b1[x], b1[y]),
                            render_lincomb(&lhs, b1),
                            render_lincomb(&rhs, b1),
                        ));
                        break 'mp3;
                    }
                }
            }
        }
        report.push(first_fail.unwrap_or_else(|| CheckRecord::pass("matched-pair-3")));

        // mp4: [ζ,ξ]◁X = [ζ◁X, ξ] + [ζ, ξ◁X] + ζ◁(ξ▷X) − ξ◁(ζ▷X)
        let mut first_fail: Option<CheckRecord> = None;
        'mp4: for z in 0..n2 {
            for w in 0..n2 {
                for x in 0..n1 {
                    let lhs = self.act_right_vec(&self.g2.bracket(z, w), &u1(x));
                    let mut rhs = self.g2.bracket_vec(&self.act_right(z, x), &u2(w));
                    add_into(&mut rhs, &self.g2.bracket_vec(&u2(z), &self.act_right(w, x)));
                    add_into(&mut rhs, &self.act_right_vec(&u2(z), &self.act_left(w, x)));
                    let t = self.act_right_vec(&u2(w), &self.act_left(z, x));
                    let rhs = sub(&rhs, &t);
                    if lhs != rhs {
                        first_fail = Some(CheckRecord::fail(
                            "matched-pair-4",
                            format!("({}, {}; {})", b2[z], b2[w], b1[x]),
                            render_lincomb(&lhs, b2),
                            render_lincomb(&rhs, b2),
                        ));
                        break 'mp4;
                    }
                }
            }
        }
        report.push(first_fail.unwrap_or_else(|| CheckRecord::pass("matched-pair-4")));
        report
    }

    /// The double crossed sum `g₁ ⋈ g₂` on the concatenated basis, with
    /// bracket `[X⊕ζ, Z⊕ξ] = ([X,Z] + ζ▷Z − ξ▷X) ⊕ ([ζ,ξ] + ζ◁Z − ξ◁X)`.
    pub fn double_crossed_sum(&self) -> LieAlgebra {
        let n1 = self.g1.dim();
        let n2 = self.g2.dim();
        let n = n1 + n2;
        let basis: Vec<String> = self
            .g1
            .basis()
            .iter()
            .chain(self.g2.basis().iter())
            .cloned()
            .collect();
        let mut c = BTreeMap::new();
        let embed = |v1: &[Rat], v2: &[Rat]| -> Vec<Rat> {
            let mut out = vec![Rat::zero(); n];
            out[..n1].clone_from_slice(v1);
            out[n1..].clone_from_slice(v2);
            out
        };
        for i in 0..n {
            for j in 0..n {
                let v = match (i < n1, j < n1) {
                    (true, true) => embed(&self.g1.bracket(i, j), &vec![Rat::zero(); n2]),
                    (false, false) => {
                        embed(&vec![Rat::zero(); n1], &self.g2.bracket(i - n1, j - n1))
                    }
                    // [ζ, X] = ζ▷X ⊕ ζ◁X
                    (false, true) => embed(&self.act_left(i - n1, j), &self.act_right(i - n1, j)),
                    (true, false) => {
                        let l = self.act_left(j - n1, i);
                        let r = self.act_right(j - n1, i);
                        embed(
                            &l.iter().map(|x| -x.clone()).collect::<Vec<_>>(),
                            &r.iter().map(|x| -x.clone()).collect::<Vec<_>>(),
                        )
                    }
                };
                if v.iter().any(|x| !x.is_zero()) {
                    c.insert((i, j), v);
                }
            }
        }
        LieAlgebra::from_raw_structure(basis, c)
    }
}

/// A finite-dimensional right module / left comodule over a Lie algebra.
#[derive(Debug, Clone)]
pub struct LieModuleComodule {
    /// Basis labels of the module.
    pub labels: Vec<String>,
    /// `action[i]` is the matrix of `◁ Xᵢ`: row `k` holds the coordinates of
    /// `e_k ◁ Xᵢ`.
    pub action: Vec<Vec<Vec<Rat>>>,
    /// `coaction[k]` is the finite sum `e_k ↦ Σ (g-index, module coords)`.
    pub coaction: Vec<Vec<(usize, Vec<Rat>)>>,
    /// Optional multiplication-by-`θⁱ` matrices (the `S(g*)`-module
    /// structure); required by the Koszul differential and the unimodular
    /// stability checker.
    pub theta_mult: Option<Vec<Vec<Vec<Rat>>>>,
}

impl LieModuleComodule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `m ◁ Xᵢ` for a coordinate vector `m`.
    pub fn act(&self, m: &[Rat], i: usize) -> Vec<Rat> {
        let mat = &self.action[i];
        let mut out = vec![Rat::zero(); self.dim()];
        for (k, ck) in m.iter().enumerate() {
            if !ck.is_zero() {
                add_into(&mut out, &scale(&mat[k], ck));
            }
        }
        out
    }

    /// `m ◁ v` for `v` a coordinate vector over the Lie algebra basis.
    pub fn act_vec(&self, m: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (i, ci) in v.iter().enumerate() {
            if !ci.is_zero() {
                add_into(&mut out, &scale(&self.act(m, i), ci));
            }
        }
        out
    }

    /// `m · θⁱ` via the stored symmetric-algebra structure.
    pub fn theta(&self, m: &[Rat], i: usize) -> Vec<Rat> {
        let mats = self
            .theta_mult
            .as_ref()
            .expect("module carries no S(g*)-multiplication data");
        let mut out = vec![Rat::zero(); self.dim()];
        for (k, ck) in m.iter().enumerate() {
            if !ck.is_zero() {
                add_into(&mut out, &scale(&mats[i][k], ck));
            }
        }
        out
    }

    /// The coaction of a coordinate vector, as a dense `g ⊗ M` matrix
    /// (`[g-index][module-index]`).
    pub fn coact(&self, m: &[Rat], g_dim: usize) -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); self.dim()]; g_dim];
        for (k, ck) in m.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (gi, coords) in &self.coaction[k] {
                add_into(&mut out[*gi], &scale(coords, ck));
            }
        }
        out
    }
}

fn gm_is_zero(t: &[Vec<Rat>]) -> bool {
    t.iter().all(|row| row.iter().all(Rat::is_zero))
}

fn gm_sub(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    a.iter().zip(b).map(|(x, y)| sub(x, y)).collect()
}

fn render_gm(t: &[Vec<Rat>], g_labels: &[String], m_labels: &[String]) -> String {
    let mut parts = Vec::new();
    for (gi, row) in t.iter().enumerate() {
        if row.iter().all(Rat::is_zero) {
            continue;
        }
        parts.push(format!(
            "{} ⊗ ({})",
            g_labels[gi],
            render_lincomb(row, m_labels)
        ));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Check the comodule axiom `m₍₋₂₎ ∧ m₍₋₁₎ ⊗ m₍₀₎ = 0`.
pub fn check_lie_comodule(m: &LieModuleComodule, g: &LieAlgebra) -> Report {
    let mut report = Report::new();
    let n = g.dim();
    for k in 0..m.dim() {
        // Antisymmetrized double coaction of basis element k.
        let mut wedge: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
        for (gi, coords) in &m.coaction[k] {
            let inner = m.coact(coords, n);
            for (gj, row) in inner.iter().enumerate() {
                if row.iter().all(Rat::is_zero) {
                    continue;
                }
                // gi ⊗ gj contributes +row at (gi, gj): wedge-project.
                let (a, b, sgn) = if gi < &gj {
                    (*gi, gj, Rat::one())
                } else if gi > &gj {
                    (gj, *gi, -Rat::one())
                } else {
                    continue;
                };
                let entry = wedge.entry((a, b)).or_insert_with(|| vec![Rat::zero(); m.dim()]);
                add_into(entry, &scale(row, &sgn));
            }
        }
        if let Some(((a, b), coords)) = wedge
            .into_iter()
            .find(|(_, coords)| coords.iter().any(|x| !x.is_zero()))
        {
            report.push(CheckRecord::fail(
                "lie-comodule",
                m.labels[k].clone(),
                format!(
                    "{} ∧ {} ⊗ ({})",
                    g.basis()[a],
                    g.basis()[b],
                    render_lincomb(&coords, &m.labels)
                ),
                "0",
            ));
            return report;
        }
    }
    report.push(CheckRecord::pass("lie-comodule"));
    report
}

/// Check the AYD condition
/// `▽(m·X) = m₍₋₁₎ ⊗ m₍₀₎·X + [m₍₋₁₎, X] ⊗ m₍₀₎` on all basis pairs.
pub fn check_lie_ayd(m: &LieModuleComodule, g: &LieAlgebra) -> Report {
    let mut report = Report::new();
    let n = g.dim();
    for k in 0..m.dim() {
        let mk = unit(m.dim(), k);
        for x in 0..n {
            let lhs = m.coact(&m.act(&mk, x), n);
            let mut rhs = vec![vec![Rat::zero(); m.dim()]; n];
            for (gi, coords) in &m.coaction[k] {
                // m₍₋₁₎ ⊗ m₍₀₎·X
                add_into(&mut rhs[*gi], &m.act(coords, x));
                // [m₍₋₁₎, X] ⊗ m₍₀₎
                for (gj, cj) in g.bracket(*gi, x).iter().enumerate() {
                    if !cj.is_zero() {
                        add_into(&mut rhs[gj], &scale(coords, cj));
                    }
                }
            }
            let diff = gm_sub(&lhs, &rhs);
            if !gm_is_zero(&diff) {
                report.push(CheckRecord::fail(
                    "lie-ayd",
                    format!("({}, {})", m.labels[k], g.basis()[x]),
                    render_gm(&lhs, g.basis(), &m.labels),
                    render_gm(&rhs, g.basis(), &m.labels),
                ));
                return report;
            }
        }
    }
    report.push(CheckRecord::pass("lie-ayd"));
    report
}

/// The AYD defect `▽(m·X) − m₍₋₁₎⊗m₍₀₎·X − [m₍₋₁₎,X]⊗m₍₀₎` for one pair,
/// rendered canonically; used to exhibit explicit witness terms.
pub fn lie_ayd_defect(
    m: &LieModuleComodule,
    g: &LieAlgebra,
    basis_elt: usize,
    x: usize,
) -> (Vec<Vec<Rat>>, String) {
    let n = g.dim();
    let mk = unit(m.dim(), basis_elt);
    let lhs = m.coact(&m.act(&mk, x), n);
    let mut rhs = vec![vec![Rat::zero(); m.dim()]; n];
    for (gi, coords) in &m.coaction[basis_elt] {
        add_into(&mut rhs[*gi], &m.act(coords, x));
        for (gj, cj) in g.bracket(*gi, x).iter().enumerate() {
            if !cj.is_zero() {
                add_into(&mut rhs[gj], &scale(coords, cj));
            }
        }
    }
    let diff = gm_sub(&lhs, &rhs);
    let rendered = render_gm(&diff, g.basis(), &m.labels);
    (diff, rendered)
}

/// Check stability `m₍₀₎ · m₍₋₁₎ = 0` on all basis elements.
pub fn check_lie_stability(m: &LieModuleComodule, g: &LieAlgebra) -> Report {
    let mut report = Report::new();
    let _ = g;
    for k in 0..m.dim() {
        let mut acc = vec![Rat::zero(); m.dim()];
        for (gi, coords) in &m.coaction[k] {
            add_into(&mut acc, &m.act(coords, *gi));
        }
        if acc.iter().any(|x| !x.is_zero()) {
            report.push(CheckRecord::fail(
                "lie-stability",
                m.labels[k].clone(),
                render_lincomb(&acc, &m.labels),
                "0",
            ));
            return report;
        }
    }
    report.push(CheckRecord::pass("lie-stability"));
    report
}

/// Check unimodular stability `Σₖ (m·Xₖ)·θᵏ = 0` on all basis elements.
pub fn check_unimodular_stability(m: &LieModuleComodule, g: &LieAlgebra) -> Report {
    let mut report = Report::new();
    for k in 0..m.dim() {
        let mk = unit(m.dim(), k);
        let mut acc = vec![Rat::zero(); m.dim()];
        for i in 0..g.dim() {
            add_into(&mut acc, &m.theta(&m.act(&mk, i), i));
        }
        if acc.iter().any(|x| !x.is_zero()) {
            report.push(CheckRecord::fail(
                "unimodular-stability",
                m.labels[k].clone(),
                render_lincomb(&acc, &m.labels),
                "0",
            ));
            return report;
        }
    }
    report.push(CheckRecord::pass("unimodular-stability"));
    report
}

/// Split a coaction over `g₁ ⋈ g₂` into its `g₁`- and `g₂`-projections.
///
/// Both projections are returned as coaction tables (indices relative to the
/// respective factor), and the report covers: each factor satisfying the
/// comodule axiom, the mixed compatibility
/// `m₍₋₁₎ ⊗ m₍₀₎⟨₋₁⟩ ⊗ m₍₀₎⟨₀⟩ = m⟨₀⟩₍₋₁₎ ⊗ m⟨₋₁⟩ ⊗ m⟨₀⟩₍₀₎`, and the
/// recombination identity.
pub struct SplitCoaction {
    pub coaction_g1: Vec<Vec<(usize, Vec<Rat>)>>,
    pub coaction_g2: Vec<Vec<(usize, Vec<Rat>)>>,
    pub report: Report,
}

pub fn split_coaction(m: &LieModuleComodule, mp: &MatchedPair) -> SplitCoaction {
    let n1 = mp.g1.dim();
    let n2 = mp.g2.dim();
    let split = |k: usize, take_g1: bool| -> Vec<(usize, Vec<Rat>)> {
        m.coaction[k]
            .iter()
            .filter_map(|(gi, coords)| {
                if take_g1 && *gi < n1 {
                    Some((*gi, coords.clone()))
                } else if !take_g1 && *gi >= n1 {
                    Some((*gi - n1, coords.clone()))
                } else {
                    None
                }
            })
            .collect()
    };
    let coaction_g1: Vec<_> = (0..m.dim()).map(|k| split(k, true)).collect();
    let coaction_g2: Vec<_> = (0..m.dim()).map(|k| split(k, false)).collect();

    let m1 = LieModuleComodule {
        labels: m.labels.clone(),
        action: Vec::new(),
        coaction: coaction_g1.clone(),
        theta_mult: None,
    };
    let m2 = LieModuleComodule {
        labels: m.labels.clone(),
        action: Vec::new(),
        coaction: coaction_g2.clone(),
        theta_mult: None,
    };

    let mut report = Report::new();
    let mut r1 = check_lie_comodule(&m1, &mp.g1);
    for rec in &mut r1.records {
        rec.check_id = format!("g1-{}", rec.check_id);
    }
    report.extend(r1);
    let mut r2 = check_lie_comodule(&m2, &mp.g2);
    for rec in &mut r2.records {
        rec.check_id = format!("g2-{}", rec.check_id);
    }
    report.extend(r2);

    // Mixed compatibility: g₂-coaction after g₁-coaction equals the flip of
    // g₁-coaction after g₂-coaction, as elements of g₁ ⊗ g₂ ⊗ M.
    let mut mixed_fail: Option<CheckRecord> = None;
    'outer: for k in 0..m.dim() {
        let mut diff: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
        for (gi, coords) in &coaction_g1[k] {
            let inner = m2.coact(coords, n2);
            for (gj, row) in inner.iter().enumerate() {
                if row.iter().any(|x| !x.is_zero()) {
                    let e = diff.entry((*gi, gj)).or_insert_with(|| vec![Rat::zero(); m.dim()]);
                    add_into(e, row);
                }
            }
        }
        for (gj, coords) in &coaction_g2[k] {
            let inner = m1.coact(coords, n1);
            for (gi, row) in inner.iter().enumerate() {
                if row.iter().any(|x| !x.is_zero()) {
                    let e = diff.entry((gi, *gj)).or_insert_with(|| vec![Rat::zero(); m.dim()]);
                    let neg = scale(row, &-Rat::one());
                    add_into(e, &neg);
                }
            }
        }
        for ((gi, gj), coords) in diff {
            if coords.iter().any(|x| !x.is_zero()) {
                mixed_fail = Some(CheckRecord::fail(
                    "split-compatibility",
                    m.labels[k].clone(),
                    format!(
                        "{} ⊗ {} ⊗ ({})",
                        mp.g1.basis()[gi],
                        mp.g2.basis()[gj],
                        render_lincomb(&coords, &m.labels)
                    ),
                    "0",
                ));
                break 'outer;
            }
        }
    }
    report.push(mixed_fail.unwrap_or_else(|| CheckRecord::pass("split-compatibility")));

    // Recombination: the two projections sum back to the original table.
    let n = n1 + n2;
    let mut recomb_ok = true;
    for k in 0..m.dim() {
        let mut orig = vec![vec![Rat::zero(); m.dim()]; n];
        for (gi, coords) in &m.coaction[k] {
            add_into(&mut orig[*gi], coords);
        }
        let mut back = vec![vec![Rat::zero(); m.dim()]; n];
        for (gi, coords) in &coaction_g1[k] {
            add_into(&mut back[*gi], coords);
        }
        for (gj, coords) in &coaction_g2[k] {
            add_into(&mut back[n1 + *gj], coords);
        }
        if orig != back {
            recomb_ok = false;
        }
    }
    report.push(if recomb_ok {
        CheckRecord::pass("split-recombination")
    } else {
        CheckRecord::fail("split-recombination", "-", "-", "-")
    });

    SplitCoaction {
        coaction_g1,
        coaction_g2,
        report,
    }
}

/// Verify the four cross-compatibility conditions that, together with
/// per-factor AYD, certify AYD over `g₁ ⋈ g₂`:
///
/// 1. `(m·X)⟨₋₁⟩ ⊗ (m·X)⟨₀⟩ = m⟨₋₁⟩◁X ⊗ m⟨₀⟩ + m⟨₋₁⟩ ⊗ m⟨₀⟩·X`
/// 2. `m⟨₋₁⟩▷X ⊗ m⟨₀⟩ = 0`
/// 3. `(m·Y)₍₋₁₎ ⊗ (m·Y)₍₀₎ = −Y▷m₍₋₁₎ ⊗ m₍₀₎ + m₍₋₁₎ ⊗ m₍₀₎·Y`
/// 4. `Y◁m₍₋₁₎ ⊗ m₍₀₎ = 0`
///
/// Here `⟨·⟩` is the g₂-coaction, `₍·₎` the g₁-coaction; `X` runs over g₁ and
/// `Y` over g₂ basis vectors. The module `m` must be given over the double
/// crossed sum (action indices: g₁ first, then g₂).
pub fn check_matched_ayd_conditions(m: &LieModuleComodule, mp: &MatchedPair) -> Report {
    let split = split_coaction(m, mp);
    let n1 = mp.g1.dim();
    let n2 = mp.g2.dim();
    let md = m.dim();
    let mut report = Report::new();

    let coact1 = |v: &[Rat]| -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); md]; n1];
        for (k, ck) in v.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (gi, coords) in &split.coaction_g1[k] {
                add_into(&mut out[*gi], &scale(coords, ck));
            }
        }
        out
    };
    let coact2 = |v: &[Rat]| -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); md]; n2];
        for (k, ck) in v.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (gi, coords) in &split.coaction_g2[k] {
                add_into(&mut out[*gi], &scale(coords, ck));
            }
        }
        out
    };

    // Condition 1.
    let mut fail: Option<CheckRecord> = None;
    'c1: for k in 0..md {
        let mk = unit(md, k);
        for x in 0..n1 {
            let lhs = coact2(&m.act(&mk, x));
            let mut rhs = vec![vec![Rat::zero(); md]; n2];
            for (gz, coords) in &split.coaction_g2[k] {
                // m⟨₋₁⟩ ◁ X ⊗ m⟨₀⟩
                for (w, cw) in mp.act_right(*gz, x).iter().enumerate() {
                    if !cw.is_zero() {
                        add_into(&mut rhs[w], &scale(coords, cw));
                    }
                }
                // m⟨₋₁⟩ ⊗ m⟨₀⟩·X
                add_into(&mut rhs[*gz], &m.act(coords, x));
            }
            if !gm_is_zero(&gm_sub(&lhs, &rhs)) {
                fail = Some(CheckRecord::fail(
                    "matched-ayd-1",
                    format!("({}, {})", m.labels[k], mp.g1.basis()[x]),
                    render_gm(&lhs, mp.g2.basis(), &m.labels),
                    render_gm(&rhs, mp.g2.basis(), &m.labels),
                ));
                break 'c1;
            }
        }
    }
    report.push(fail.unwrap_or_else(|| CheckRecord::pass("matched-ayd-1")));

    // Condition 2.
    let mut fail: Option<CheckRecord> = None;
    'c2: for k in 0..md {
        for x in 0..n1 {
            let mut acc = vec![vec![Rat::zero(); md]; n1];
            for (gz, coords) in &split.coaction_g2[k] {
                for (w, cw) in mp.act_left(*gz, x).iter().enumerate() {
                    if !cw.is_zero() {
                        add_into(&mut acc[w], &scale(coords, cw));
                    }
                }
            }
            if !gm_is_zero(&acc) {
                fail = Some(CheckRecord::fail(
                    "matched-ayd-2",
                    format!("({}, {})", m.labels[k], mp.g1.basis()[x]),
                    render_gm(&acc, mp.g1.basis(), &m.labels),
                    "0",
                ));
                break 'c2;
            }
        }
    }
    report.push(fail.unwrap_or_else(|| CheckRecord::pass("matched-ayd-2")));

    // Condition 3. The g₂-action on M sits at indices n1..n1+n2.
    let mut fail: Option<CheckRecord> = None;
    'c3: for k in 0..md {
        let mk = unit(md, k);
        for y in 0..n2 {
            let lhs = coact1(&m.act(&mk, n1 + y));
            let mut rhs = vec![vec![Rat::zero(); md]; n1];
            for (gx, coords) in &split.coaction_g1[k] {
                // −Y ▷ m₍₋₁₎ ⊗ m₍₀₎
                for (w, cw) in mp.act_left(y, *gx).iter().enumerate() {
                    if !cw.is_zero() {
                        let neg = -cw.clone();
                        add_into(&mut rhs[w], &scale(coords, &neg));
                    }
                }
                // m₍₋₁₎ ⊗ m₍₀₎·Y
                add_into(&mut rhs[*gx], &m.act(coords, n1 + y));
            }
            if !gm_is_zero(&gm_sub(&lhs, &rhs)) {
                fail = Some(CheckRecord::fail(
                    "matched-ayd-3",
                    format!("({}, {})", m.labels[k], mp.g2.basis()[y]),
                    render_gm(&lhs, mp.g1.basis(), &m.labels),
                    render_gm(&rhs, mp.g1.basis(), &m.labels),
                ));
                break 'c3;
            }
        }
    }
    report.push(fail.unwrap_or_else(|| CheckRecord::pass("matched-ayd-3")));

    // Condition 4.
    let mut fail: Option<CheckRecord> = None;
    'c4: for k in 0..md {
        for y in 0..n2 {
            let mut acc = vec![vec![Rat::zero(); md]; n2];
            for (gx, coords) in &split.coaction_g1[k] {
                for (w, cw) in mp.act_right(y, *gx).iter().enumerate() {
                    if !cw.is_zero() {
                        add_into(&mut acc[w], &scale(coords, cw));
                    }
                }
            }
            if !gm_is_zero(&acc) {
                fail = Some(CheckRecord::fail(
                    "matched-ayd-4",
                    format!("({}, {})", m.labels[k], mp.g2.basis()[y]),
                    render_gm(&acc, mp.g2.basis(), &m.labels),
                    "0",
                ));
                break 'c4;
            }
        }
    }
    report.push(fail.unwrap_or_else(|| CheckRecord::pass("matched-ayd-4")));
    report
}

/// Monomial basis of the truncated symmetric algebra `S(g*)` with all
/// monomials of degree ≤ `truncation_degree`, ordered by total degree then
/// lexicographically in the exponent vector.
pub fn truncated_monomials(g_dim: usize, truncation_degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for deg in 0..=truncation_degree {
        let mut stack = vec![(Vec::<usize>::new(), deg)];
        let mut level = Vec::new();
        while let Some((prefix, rem)) = stack.pop() {
            if prefix.len() == g_dim {
                if rem == 0 {
                    level.push(prefix);
                }
                continue;
            }
            for e in 0..=rem {
                let mut p = prefix.clone();
                p.push(e);
                stack.push((p, rem - e));
            }
        }
        // Within a degree, order monomials with earlier dual generators first
        // (descending lex on exponent vectors), so e.g. θ¹ precedes θ².
        level.sort_by(|a, b| b.cmp(a));
        out.extend(level);
    }
    out
}

/// Label of a dual monomial, e.g. `1`, `θ^X`, or `θ^X^2·θ^Y`.
pub fn monomial_label(expo: &[usize], dual_names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in expo.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(dual_names[i].clone()),
            _ => parts.push(format!("{}^{}", dual_names[i], e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("·")
    }
}

/// Build the truncated symmetric algebra `S(g*)` (degree ≤ `truncation_degree`)
/// as a right `g`-module via `m ◁ X := −L_X(m) + δ(X)m`, where `L` is the
/// coadjoint representation `(L_X θʲ)(W) = −θʲ([X, W])` extended as an algebra
/// derivation, and `δ` defaults to the trace of the adjoint representation.
///
/// The returned module also carries the Koszul coaction `m ↦ Σᵢ Xᵢ ⊗ mθⁱ`
/// (truncated products dropped) and the multiplication-by-`θⁱ` matrices.
pub fn coadjoint_action_build(
    g: &LieAlgebra,
    truncation_degree: usize,
    dual_names: Option<Vec<String>>,
    character: Option<Vec<Rat>>,
) -> LieModuleComodule {
    let n = g.dim();
    let dual_names =
        dual_names.unwrap_or_else(|| g.basis().iter().map(|b| format!("θ^{b}")).collect());
    assert_eq!(dual_names.len(), n);
    let delta = character.unwrap_or_else(|| g.adjoint_trace_character());
    assert_eq!(delta.len(), n);

    let monos = truncated_monomials(n, truncation_degree);
    let index: BTreeMap<Vec<usize>, usize> =
        monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = monos.len();
    let labels: Vec<String> = monos.iter().map(|e| monomial_label(e, &dual_names)).collect();

    // L_{Xᵢ} θʲ = Σ_l −c[i][l][j] θˡ.
    let lie_on_theta = |i: usize, j: usize| -> Vec<Rat> {
        (0..n).map(|l| -g.c(i, l, j)).collect()
    };

    // Multiplication by θⁱ (dropping monomials above the truncation).
    let mut theta_mult = vec![vec![vec![Rat::zero(); dim]; dim]; n];
    for (k, mono) in monos.iter().enumerate() {
        for (i, row) in theta_mult.iter_mut().enumerate() {
            let mut up = mono.clone();
            up[i] += 1;
            if let Some(&t) = index.get(&up) {
                row[k][t] = Rat::one();
            }
        }
    }

    // Action matrices: derivation extension of −L plus the δ-twist.
    let mut action = vec![vec![vec![Rat::zero(); dim]; dim]; n];
    for (k, mono) in monos.iter().enumerate() {
        for i in 0..n {
            // δ(Xᵢ) m
            action[i][k][k] += delta[i].clone();
            // −L_{Xᵢ}(m): Leibniz over the factors of the monomial.
            for j in 0..n {
                if mono[j] == 0 {
                    continue;
                }
                let mult = Rat::from_integer(mono[j].into());
                let ltheta = lie_on_theta(i, j);
                for (l, cl) in ltheta.iter().enumerate() {
                    if cl.is_zero() {
                        continue;
                    }
                    // Replace one factor θʲ by θˡ.
                    let mut up = mono.clone();
                    up[j] -= 1;
                    up[l] += 1;
                    if let Some(&t) = index.get(&up) {
                        action[i][k][t] -= cl * &mult;
                    }
                }
            }
        }
    }

    // Koszul coaction: m ↦ Σᵢ Xᵢ ⊗ mθⁱ.
    let mut coaction = vec![Vec::new(); dim];
    for (k, mono) in monos.iter().enumerate() {
        for i in 0..n {
            let mut up = mono.clone();
            up[i] += 1;
            if let Some(&t) = index.get(&up) {
                let mut coords = vec![Rat::zero(); dim];
                coords[t] = Rat::one();
                coaction[k].push((i, coords));
            }
        }
    }

    LieModuleComodule {
        labels,
        action,
        coaction,
        theta_mult: Some(theta_mult),
    }
}

/// The Koszul coaction table alone (for modules built elsewhere).
pub fn koszul_coaction_build(
    g: &LieAlgebra,
    truncation_degree: usize,
) -> Vec<Vec<(usize, Vec<Rat>)>> {
    coadjoint_action_build(g, truncation_degree, None, None).coaction
}

/// Twist the action of a Lie module by a character: `m ◁' X = m ◁ X + β(X)m`.
pub fn twist_action_by_character(m: &LieModuleComodule, beta: &[Rat]) -> LieModuleComodule {
    let mut out = m.clone();
    for (i, bi) in beta.iter().enumerate() {
        if bi.is_zero() {
            continue;
        }
        for k in 0..m.dim() {
            out.action[i][k][k] += bi.clone();
        }
    }
    out
}

/// The standard `sl₂` with basis `{X, Y, Z}` and brackets
/// `[Y,X] = X, [Z,X] = Y, [Z,Y] = Z`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        vec!["X", "Y", "Z"],
        [
            (1, 0, vec![(0, Rat::one())]),
            (2, 0, vec![(1, Rat::one())]),
            (2, 1, vec![(2, Rat::one())]),
        ],
    )
}

/// The matched-pair decomposition `sl₂ = g₁ ⋈ g₂`, `g₁ = ⟨X, Y⟩`,
/// `g₂ = ⟨Z⟩`.
pub fn sl2_matched_pair() -> MatchedPair {
    MatchedPair::from_decomposition(&sl2(), &[0, 1], &[2])
}

/// `gl₂` with basis `{Y¹₁, Y¹₂, Y²₁, Y²₂}` (matrix units `Yʲᵢ = E_ij`) and
/// bracket `[Yʲᵢ, Yˡₖ] = δʲₖ Yˡᵢ − δˡᵢ Yʲₖ`.
pub fn gl2() -> LieAlgebra {
    let names = ["Y^1_1", "Y^1_2", "Y^2_1", "Y^2_2"];
    // (i, j) pairs of Yʲᵢ in basis order.
    let ij = [(1usize, 1usize), (1, 2), (2, 1), (2, 2)];
    let mut brackets = Vec::new();
    for a in 0..4 {
        for b in (a + 1)..4 {
            let (i, j) = ij[a];
            let (k, l) = ij[b];
            let mut terms: BTreeMap<usize, Rat> = BTreeMap::new();
            if j == k {
                // + Yˡᵢ
                let t = ij.iter().position(|&p| p == (i, l)).unwrap();
                *terms.entry(t).or_insert_with(Rat::zero) += Rat::one();
            }
            if l == i {
                // − Yʲₖ
                let t = ij.iter().position(|&p| p == (k, j)).unwrap();
                *terms.entry(t).or_insert_with(Rat::zero) -= Rat::one();
            }
            let terms: Vec<(usize, Rat)> =
                terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !terms.is_empty() {
                brackets.push((a, b, terms));
            }
        }
    }
    LieAlgebra::from_brackets(names.to_vec(), brackets)
}

/// The decomposition `gl₂ = g₁ ⋈ g₂` with `g₁ = ⟨Y¹₁, Y¹₂⟩`,
/// `g₂ = ⟨Y²₁, Y²₂⟩`.
pub fn gl2_matched_pair() -> MatchedPair {
    MatchedPair::from_decomposition(&gl2(), &[0, 1], &[2, 3])
}

/// Dual basis names for [`gl2`]: `θⁱⱼ` is dual to `Yʲᵢ`.
pub fn gl2_dual_names() -> Vec<String> {
    vec![
        "θ^1_1".to_string(),
        "θ^2_1".to_string(),
        "θ^1_2".to_string(),
        "θ^2_2".to_string(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn coords(m: &LieModuleComodule, label: &str) -> Vec<Rat> {
        let k = m.labels.iter().position(|l| l == label).unwrap();
        unit(m.dim(), k)
    }

    #[test]
    fn jacobi_holds_for_sl2_and_gl2() {
        assert!(sl2().verify_jacobi().passed());
        assert!(gl2().verify_jacobi().passed());
    }

    #[test]
    fn non_antisymmetric_input_is_rejected_with_index_pair() {
        let mut c = BTreeMap::new();
        c.insert((0, 1), vec![rat(1), rat(0)]);
        // missing (1, 0) entry => [X2, X1] = 0 != -[X1, X2]
        let g = LieAlgebra::from_raw_structure(vec!["A", "B"], c);
        let rep = g.verify_jacobi();
        assert!(!rep.passed());
        let fail = rep.failures().next().unwrap();
        assert_eq!(fail.check_id, "antisymmetry");
        assert_eq!(fail.witness.as_deref(), Some("(A, B)"));
    }

    #[test]
    fn jacobi_violation_reports_first_triple() {
        // Antisymmetric but non-Jacobi: [A,B]=C, [B,C]=A, [A,C]=A.
        let g = LieAlgebra::from_brackets(
            vec!["A", "B", "C"],
            [
                (0, 1, vec![(2, rat(1))]),
                (1, 2, vec![(0, rat(1))]),
                (0, 2, vec![(0, rat(1))]),
            ],
        );
        let rep = g.verify_jacobi();
        assert!(!rep.passed());
        let fail = rep.failures().next().unwrap();
        assert_eq!(fail.check_id, "jacobi");
        // (A, A, B) cancels; the first genuinely failing triple is (A, B, C).
        assert_eq!(fail.witness.as_deref(), Some("(A, B, C)"));
    }

    #[test]
    fn sl2_matched_pair_verifies_and_recovers_sl2() {
        let mp = sl2_matched_pair();
        assert!(mp.verify().passed());
        // Cross actions: Z ◁ X = 0, Z ◁ Y = Z, Z ▷ X = Y, Z ▷ Y = 0.
        assert_eq!(mp.act_right(0, 0), vec![rat(0)]);
        assert_eq!(mp.act_right(0, 1), vec![rat(1)]);
        assert_eq!(mp.act_left(0, 0), vec![rat(0), rat(1)]);
        assert_eq!(mp.act_left(0, 1), vec![rat(0), rat(0)]);
        let ds = mp.double_crossed_sum();
        assert_eq!(ds, sl2());
        assert!(ds.verify_jacobi().passed());
    }

    #[test]
    fn gl2_matched_pair_verifies_and_recovers_gl2() {
        let mp = gl2_matched_pair();
        assert!(mp.verify().passed());
        assert_eq!(mp.double_crossed_sum(), gl2());
    }

    #[test]
    fn double_crossed_sum_of_verified_pair_satisfies_jacobi() {
        // Start from an abstract matched pair (not a decomposition) and check
        // that the double crossed sum is again a Lie algebra.
        let g1 = LieAlgebra::from_brackets(vec!["X", "Y"], [(1, 0, vec![(0, rat(1))])]);
        let g2 = LieAlgebra::abelian(vec!["Z"]);
        // Same data as the sl2 decomposition, fed in explicitly.
        let mp = MatchedPair::new(
            g1,
            g2,
            [((0, 0), vec![]), ((0, 1), vec![(0, rat(1))])],
            [((0, 0), vec![(1, rat(1))]), ((0, 1), vec![])],
        );
        assert!(mp.verify().passed());
        assert!(mp.double_crossed_sum().verify_jacobi().passed());
    }

    #[test]
    fn truncated_monomial_order_and_labels() {
        let monos = truncated_monomials(3, 1);
        assert_eq!(
            monos,
            vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        let m = coadjoint_action_build(&sl2(), 2, None, None);
        assert_eq!(
            m.labels,
            vec![
                "1", "θ^X", "θ^Y", "θ^Z", "θ^X^2", "θ^X·θ^Y", "θ^X·θ^Z", "θ^Y^2", "θ^Y·θ^Z",
                "θ^Z^2"
            ]
        );
    }

    #[test]
    fn sl2_coadjoint_action_table_degree_one() {
        let g = sl2();
        let m = coadjoint_action_build(&g, 1, None, None);
        assert_eq!(m.labels, vec!["1", "θ^X", "θ^Y", "θ^Z"]);
        let table = |label: &str, x: usize| render_lincomb(&m.act(&coords(&m, label), x), &m.labels);
        // ◁X, ◁Y, ◁Z columns.
        assert_eq!(table("1", 0), "0");
        assert_eq!(table("1", 1), "0");
        assert_eq!(table("1", 2), "0");
        assert_eq!(table("θ^X", 0), "-θ^Y");
        assert_eq!(table("θ^X", 1), "θ^X");
        assert_eq!(table("θ^X", 2), "0");
        assert_eq!(table("θ^Y", 0), "-θ^Z");
        assert_eq!(table("θ^Y", 1), "0");
        assert_eq!(table("θ^Y", 2), "θ^X");
        assert_eq!(table("θ^Z", 0), "0");
        assert_eq!(table("θ^Z", 1), "-θ^Z");
        assert_eq!(table("θ^Z", 2), "θ^Y");
    }

    #[test]
    fn sl2_character_twist_scales_weight_one_vectors() {
        let g = sl2();
        let m = coadjoint_action_build(&g, 1, None, None);
        let t = twist_action_by_character(&m, &[rat(0), rat(1), rat(0)]);
        // θ^X ◁' Y = θ^X + θ^X = 2 θ^X.
        assert_eq!(
            render_lincomb(&t.act(&coords(&t, "θ^X"), 1), &t.labels),
            "2*θ^X"
        );
        // The twist leaves ◁X untouched.
        assert_eq!(t.act(&coords(&t, "θ^X"), 0), m.act(&coords(&m, "θ^X"), 0));
    }

    #[test]
    fn sl2_koszul_coaction_on_unit() {
        let g = sl2();
        let m = coadjoint_action_build(&g, 1, None, None);
        // 1 ↦ X⊗θ^X + Y⊗θ^Y + Z⊗θ^Z.
        let t = m.coact(&coords(&m, "1"), g.dim());
        assert_eq!(
            render_gm(&t, g.basis(), &m.labels),
            "X ⊗ (θ^X) + Y ⊗ (θ^Y) + Z ⊗ (θ^Z)"
        );
        // Top-degree elements coact trivially in the truncation.
        assert!(gm_is_zero(&m.coact(&coords(&m, "θ^X"), g.dim())));
    }

    #[test]
    fn sl2_truncated_module_is_sayd_at_lie_level() {
        let g = sl2();
        for trunc in [1, 2] {
            let m = coadjoint_action_build(&g, trunc, None, None);
            assert!(check_lie_comodule(&m, &g).passed(), "comodule trunc {trunc}");
            assert!(check_lie_ayd(&m, &g).passed(), "ayd trunc {trunc}");
            assert!(check_lie_stability(&m, &g).passed(), "stability trunc {trunc}");
            assert!(
                check_unimodular_stability(&m, &g).passed(),
                "unimodular trunc {trunc}"
            );
        }
    }

    #[test]
    fn sl2_split_coaction_and_matched_ayd_conditions() {
        let mp = sl2_matched_pair();
        let m = coadjoint_action_build(&sl2(), 1, None, None);
        let split = split_coaction(&m, &mp);
        assert!(split.report.passed(), "{}", split.report);
        // g₂-leg of the unit: Z ⊗ θ^Z.
        assert_eq!(split.coaction_g2[0].len(), 1);
        assert_eq!(split.coaction_g2[0][0].0, 0);
        // The truncated module is AYD over sl₂ but fails the cross condition
        // m⟨₋₁⟩ ▷ X ⊗ m⟨₀⟩ = 0 at the unit: Z ▷ X = Y leaves Y ⊗ θ^Z.
        let rep = check_matched_ayd_conditions(&m, &mp);
        assert!(!rep.passed());
        let fail = rep.failures().next().unwrap();
        assert_eq!(fail.check_id, "matched-ayd-2");
        assert_eq!(fail.witness.as_deref(), Some("(1, X)"));
        assert_eq!(fail.lhs.as_deref(), Some("Y ⊗ (θ^Z)"));
        // The degree-0 truncation carries the zero coaction and passes all
        // four conditions trivially.
        let m0 = coadjoint_action_build(&sl2(), 0, None, None);
        assert!(check_matched_ayd_conditions(&m0, &mp).passed());
    }

    #[test]
    fn restricted_coaction_breaks_lie_ayd() {
        let g = sl2();
        let mut m = coadjoint_action_build(&g, 1, None, None);
        // Keep only the g₁-legs of the Koszul coaction: 1 ↦ X⊗θ^X + Y⊗θ^Y.
        for row in &mut m.coaction {
            row.retain(|(gi, _)| *gi < 2);
        }
        assert!(check_lie_comodule(&m, &g).passed());
        let rep = check_lie_ayd(&m, &g);
        assert!(!rep.passed());
        // Defect at (1, Z): the missing Z-leg leaves Z ⊗ θ^Y uncancelled.
        let (_, rendered) = lie_ayd_defect(&m, &g, 0, 2);
        assert_eq!(rendered, "Z ⊗ (θ^Y)");
    }

    #[test]
    fn gl2_borel_koszul_module_fails_stability() {
        // The 2-dimensional subalgebra ⟨Y¹₁, Y¹₂⟩ of gl₂ with its Koszul
        // coaction on the degree-≤2 truncation and the trivial character is
        // not stable.
        let g1 = LieAlgebra::from_brackets(
            vec!["Y^1_1", "Y^1_2"],
            [(0, 1, vec![(1, -rat(1))])],
        );
        let duals = vec!["θ^1_1".to_string(), "θ^2_1".to_string()];
        let m = coadjoint_action_build(&g1, 2, Some(duals), Some(vec![rat(0), rat(0)]));
        let rep = check_lie_stability(&m, &g1);
        assert!(!rep.passed());
        // Already the unit is unstable: 1₍₀₎ ◁ 1₍₋₁₎ = θ²₁ ◁ Y¹₂ = θ¹₁.
        let fail = rep.failures().next().unwrap();
        assert_eq!(fail.witness.as_deref(), Some("1"));
        assert_eq!(fail.lhs.as_deref(), Some("θ^1_1"));
    }

    #[test]
    fn abelian_trace_character_vanishes_and_sl2_is_unimodular() {
        assert!(sl2().adjoint_trace_character().iter().all(Rat::is_zero));
        assert!(gl2().adjoint_trace_character().iter().all(Rat::is_zero));
        // The Borel subalgebra is not unimodular: tr ad(Y¹₁) = −1.
        let g1 = LieAlgebra::from_brackets(
            vec!["Y^1_1", "Y^1_2"],
            [(0, 1, vec![(1, -rat(1))])],
        );
        assert_eq!(g1.adjoint_trace_character(), vec![-rat(1), rat(0)]);
    }
}
