#![allow(dead_code)]

use std::collections::BTreeMap;

use splitkit::diagram::{Color, End, JacobiDiagram};
use splitkit::milnor::LinkDiagram;

/// Weight of a diagram under the so(3) weight system: every trivalent vertex
/// is the Levi-Civita symbol in its cyclic order, every edge contracts an
/// index, and a leg of color `c` contributes `vectors[c]`.
pub fn so3_weight(d: &JacobiDiagram, vectors: &BTreeMap<Color, [i64; 3]>) -> i64 {
    let n = d.n_half_edges();
    let mut edge_of = vec![usize::MAX; n];
    let mut n_edges = 0;
    for h in 0..n {
        if edge_of[h] == usize::MAX {
            edge_of[h] = n_edges;
            edge_of[d.partner(h)] = n_edges;
            n_edges += 1;
        }
    }
    let mut idx = vec![0usize; n_edges];
    let mut total = 0i64;
    loop {
        let mut w = 1i64;
        for v in 0..d.idegree() {
            let (a, b, c) = (idx[edge_of[3 * v]], idx[edge_of[3 * v + 1]], idx[edge_of[3 * v + 2]]);
            w *= levi_civita(a, b, c);
            if w == 0 {
                break;
            }
        }
        if w != 0 {
            for (i, c) in d.legs().iter().enumerate() {
                w *= vectors[c][idx[edge_of[d.leg_half_edge(i)]]];
            }
            total += w;
        }
        let mut k = 0;
        loop {
            if k == n_edges {
                return total;
            }
            idx[k] += 1;
            if idx[k] < 3 {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn levi_civita(a: usize, b: usize, c: usize) -> i64 {
    if a == b || b == c || a == c {
        0
    } else if (b + 3 - a) % 3 == 1 {
        1
    } else {
        -1
    }
}

pub fn vectors(colors: &[&str]) -> BTreeMap<Color, [i64; 3]> {
    let table = [[1, 2, -1], [3, -1, 2], [-2, 1, 4], [1, 5, 3], [2, -3, 1], [4, 1, -2]];
    colors.iter().enumerate().map(|(i, c)| (Color::new(c), table[i % table.len()])).collect()
}

/// Is half-edge `h` attached to a trivalent vertex?
pub fn is_tri(d: &JacobiDiagram, h: usize) -> bool {
    matches!(d.end(h), End::Tri { .. })
}

use num::{BigRational, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use splitkit::diagram::{unit_color, LinearColor};
use splitkit::diagram::{ColorSet, DiagramElement};
use splitkit::linking::{EssentialSubspace, LinkingForm, SurgeryClass, SymplecticSpace};
use splitkit::splitting::{Block, LPFamily, Trivector};
use splitkit::ts::{compose, compose_by_gluing, Morphism, StrutMatrix};
use splitkit::Q;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> Q {
    BigRational::new(n.into(), d.into())
}

/// Two trivalent vertices joined by one edge, legs `(a, b)` on one and `(c, d)` on the other.
pub fn h_tree(a: &Color, b: &Color, c: &Color, d: &Color) -> JacobiDiagram {
    JacobiDiagram::from_half_edges(
        &[[0, 1, 2], [3, 4, 5]],
        &[(10, a.clone()), (11, b.clone()), (12, c.clone()), (13, d.clone())],
        &[(2, 3), (0, 10), (1, 11), (4, 12), (5, 13)],
    )
    .unwrap()
}

/// Two trivalent vertices joined by a double edge, one leg on each.
pub fn bubble(a: &Color, b: &Color) -> JacobiDiagram {
    JacobiDiagram::from_half_edges(
        &[[0, 1, 2], [3, 4, 5]],
        &[(10, a.clone()), (11, b.clone())],
        &[(0, 10), (1, 4), (2, 3), (5, 11)],
    )
    .unwrap()
}

fn small_nonzero<R: Rng>(rng: &mut R) -> Q {
    let n = [-2, -1, 1, 2, 3][rng.gen_range(0..5)];
    let d = [1, 1, 2][rng.gen_range(0..3)];
    qr(n, d)
}

/// A random morphism `g → f`: sparse small strut matrix, Y-part equal to
/// the empty diagram plus at most two connected diagrams.
pub fn random_morphism<R: Rng>(rng: &mut R, g: usize, f: usize, cap: usize) -> Morphism {
    let n = g + f;
    let mut m = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            if j < g || rng.gen_bool(0.5) {
                continue;
            }
            let v = small_nonzero(rng);
            m[i][j] = v.clone();
            m[j][i] = v;
        }
    }
    let colors = ColorSet::top_bottom(g, f);
    let labels = colors.labels().to_vec();
    let mut y = DiagramElement::one(colors.clone());
    if labels.len() >= 2 {
        let k = rng.gen_range(1..=2);
        for _ in 0..k {
            // colors at one vertex are distinct, otherwise AS kills the diagram
            let d = loop {
                let idx: Vec<usize> = (0..4).map(|_| rng.gen_range(0..labels.len())).collect();
                let [a, b, c, d] = [0, 1, 2, 3].map(|i| labels[idx[i]].clone());
                match rng.gen_range(0..3) {
                    0 if labels.len() >= 3 && a != b && b != c && a != c => break JacobiDiagram::tripod(a, b, c),
                    1 if a != b && c != d => break h_tree(&a, &b, &c, &d),
                    2 => break bubble(&a, &b),
                    _ => continue,
                }
            };
            y.add_diagram(&d, small_nonzero(rng));
        }
    }
    Morphism::new(StrutMatrix::new(g, f, m).unwrap(), y, cap).unwrap()
}

/// Terms of `e` with at most `legs` legs.
pub fn low_legs(e: &DiagramElement, legs: usize) -> DiagramElement {
    DiagramElement::from_terms(
        e.terms().filter(|(d, _)| d.n_legs() <= legs).map(|(d, q)| (d, q.clone())),
        e.colors().clone(),
    )
}

pub fn zmat(m: &[Vec<i64>]) -> Vec<Vec<num::BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect()
}

pub fn qmat(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn imul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b[0].len();
    a.iter().map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect()).collect()
}

pub fn standard_omega(g: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; 2 * g]; 2 * g];
    for i in 0..g {
        m[i][g + i] = 1;
        m[g + i][i] = -1;
    }
    m
}

/// Random integer matrix of determinant ±1, with its inverse.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mut inv = a.clone();
    if n < 2 {
        return (a, inv);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = [-1, 1][rng.gen_range(0..2)];
        // a ← E a with E = I + k e_ij; inv ← inv E⁻¹
        for c in 0..n {
            a[i][c] += k * a[j][c];
        }
        for r in 0..n {
            inv[r][j] -= k * inv[r][i];
        }
    }
    (a, inv)
}

/// Random integer matrix preserving the standard form, as a product of transvections.
pub fn random_symplectic<R: Rng>(rng: &mut R, g: usize) -> Vec<Vec<i64>> {
    let n = 2 * g;
    let omega = standard_omega(g);
    let mut s: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for _ in 0..2 * g {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
        let k = [-1, 1][rng.gen_range(0..2)];
        // x ↦ x + k (v · x) v
        let vo: Vec<i64> = (0..n).map(|j| (0..n).map(|i| v[i] * omega[i][j]).sum()).collect();
        let t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64 + k * v[i] * vo[j]).collect()).collect();
        s = imul(&t, &s);
    }
    s
}

pub fn imatmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    imul(a, b)
}

pub fn itranspose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// A free group word as letters `(generator, ±1)`, kept freely reduced.
pub type Word = Vec<(usize, i32)>;

fn push_letter(w: &mut Word, l: (usize, i32)) {
    if w.last().is_some_and(|&(g, e)| g == l.0 && e == -l.1) {
        w.pop();
    } else {
        w.push(l);
    }
}

fn word_inverse(w: &Word) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

fn word_power(w: &Word, e: i64) -> Word {
    let base = if e < 0 { word_inverse(w) } else { w.clone() };
    let mut out = Word::new();
    for _ in 0..e.unsigned_abs() {
        for &l in &base {
            push_letter(&mut out, l);
        }
    }
    out
}

fn concat(parts: &[&Word]) -> Word {
    let mut out = Word::new();
    for p in parts {
        for &l in p.iter() {
            push_letter(&mut out, l);
        }
    }
    out
}

/// Longitudes as explicit words in one meridian per component, by `rounds`
/// of substitution into the Wirtinger relations read off the diagram.
pub fn longitude_words(d: &LinkDiagram, rounds: usize) -> Vec<Word> {
    let x = d.crossings();
    // (crossing, entry slot) for each step along each component.
    let mut steps: Vec<Vec<(usize, usize)>> = Vec::new();
    for arcs in d.components() {
        let mut s = Vec::new();
        let slots: Vec<(usize, usize)> =
            (0..x.len()).flat_map(|c| (0..4).map(move |k| (c, k))).filter(|&(c, k)| x[c][k] == arcs[0]).collect();
        // Try each end of the first arc; keep the walk that reproduces the arcs.
        for &start in &slots {
            let mut walk = Vec::new();
            let mut h = start;
            for t in 0..arcs.len() {
                if h.1 == 2 {
                    break;
                }
                let exit = (h.0, (h.1 + 2) % 4);
                if x[exit.0][exit.1] != arcs[(t + 1) % arcs.len()] {
                    break;
                }
                walk.push(h);
                let b = x[exit.0][exit.1];
                h = (0..x.len())
                    .flat_map(|c| (0..4).map(move |k| (c, k)))
                    .find(|&sl| sl != exit && x[sl.0][sl.1] == b)
                    .expect("every arc has two ends");
            }
            if walk.len() == arcs.len() && h == start {
                s = walk;
                break;
            }
        }
        steps.push(s);
    }
    let mut sign = vec![0i64; x.len()];
    for s in &steps {
        for &(c, k) in s {
            if k == 3 {
                sign[c] = 1;
            } else if k == 1 {
                sign[c] = -1;
            }
        }
    }
    // Generators: one per under-pass segment.
    let mut owner = Vec::new();
    let mut base = Vec::new();
    let mut over_gen = vec![0usize; x.len()];
    for (comp, s) in steps.iter().enumerate() {
        let m = s.iter().filter(|p| p.1 == 0).count().max(1);
        base.push(owner.len());
        let start = owner.len();
        owner.extend(std::iter::repeat_n(comp, m));
        let mut seg = 0;
        for &(c, k) in s {
            if k == 0 {
                seg += 1;
            } else {
                over_gen[c] = start + seg % m;
            }
        }
    }
    let unders: Vec<Vec<(usize, i64)>> =
        steps.iter().map(|s| s.iter().filter(|p| p.1 == 0).map(|&(c, _)| (over_gen[c], sign[c])).collect()).collect();
    let mut words: Vec<Word> = owner.iter().map(|&c| vec![(c, 1)]).collect();
    for _ in 0..rounds {
        let prev = words.clone();
        for (comp, u) in unders.iter().enumerate() {
            let mut cur = vec![(comp, 1)];
            for (t, &(y, e)) in u.iter().enumerate().take(u.len().saturating_sub(1)) {
                cur = concat(&[&word_power(&prev[y], -e), &cur, &word_power(&prev[y], e)]);
                words[base[comp] + t + 1] = cur.clone();
            }
        }
    }
    unders
        .iter()
        .enumerate()
        .map(|(comp, u)| {
            let self_exp: i64 = u.iter().filter(|(y, _)| owner[*y] == comp).map(|(_, e)| e).sum();
            let mut w = word_power(&vec![(comp, 1)], -self_exp);
            for &(y, e) in u {
                w = concat(&[&w, &word_power(&words[y], e)]);
            }
            w
        })
        .collect()
}

/// Coefficient of `X_i X_j` (`i ≠ j`) in the Magnus expansion of a word:
/// the signed count of letter pairs `x_i .. x_j` in that order.
pub fn pair_count(w: &Word, i: usize, j: usize) -> i64 {
    let mut seen_i = 0i64;
    let mut total = 0i64;
    for &(g, e) in w {
        if g == j {
            total += seen_i * e as i64;
        }
        if g == i {
            seen_i += e as i64;
        }
    }
    total
}

/// Exponent sum of generator `i` in a word.
pub fn exponent_sum(w: &Word, i: usize) -> i64 {
    w.iter().filter(|l| l.0 == i).map(|l| l.1 as i64).sum()
}

pub fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// One invocation per subcommand over the fixtures, each expected to succeed.
pub fn fixture_commands() -> Vec<Vec<String>> {
    let f = fixture;
    let cmds: Vec<Vec<String>> = vec![
        vec!["normal-form".into(), "--in".into(), f("ihx_relator.json")],
        vec!["normal-form".into(), "--in".into(), f("tripods.json")],
        vec!["normal-form".into(), "--in".into(), f("theta.json"), "--cap".into(), "2".into()],
        vec!["dim".into(), "--idegree".into(), "2".into(), "--legs".into(), "".into()],
        vec!["dim".into(), "--idegree".into(), "2".into(), "--legs".into(), "a,b,c,d".into()],
        vec!["compose".into(), "--in".into(), f("morphism_2_to_1.json"), "--in".into(), f("morphism_1_to_2.json")],
        vec!["compose".into(), "--in".into(), f("identity_1.json"), "--in".into(), f("morphism_2_to_1.json")],
        vec!["tensor".into(), "--in".into(), f("morphism_2_to_1.json"), "--in".into(), f("identity_1.json")],
        vec![
            "pairing".into(),
            "--in".into(),
            f("tripods.json"),
            "--in".into(),
            f("tripods.json"),
            "--over".into(),
            "1+,2+,3+".into(),
        ],
        vec!["theta".into(), "--in".into(), f("genus2.json"), "--subspace".into(), "F".into()],
        vec![
            "kappa".into(),
            "--in".into(),
            f("genus2.json"),
            "--in".into(),
            f("theta.json"),
            "--from".into(),
            "E".into(),
            "--to".into(),
            "G".into(),
        ],
        vec!["transport".into(), "--in".into(), f("genus2.json"), "--to".into(), "G".into()],
        vec!["symp-complete".into(), "--in".into(), f("completion.json")],
        vec!["tripods".into(), "--in".into(), f("family_r2.json")],
        vec![
            "glue".into(),
            "--in".into(),
            f("two_tripods.json"),
            "--in".into(),
            f("legform.json"),
            "--mode".into(),
            "some".into(),
        ],
        vec!["splitting-rhs".into(), "--in".into(), f("family_r1.json"), "--mode".into(), "all".into()],
        vec!["splitting-rhs".into(), "--in".into(), f("family_r2.json"), "--mode".into(), "some".into()],
        vec!["splitting-rhs".into(), "--in".into(), f("family_r3.json"), "--mode".into(), "all".into()],
        vec!["alt-sum".into(), "--in".into(), f("alt_sum_r2.json")],
        vec!["milnor".into(), "--pd".into(), f("borromean.pd")],
        vec!["milnor".into(), "--pd".into(), f("borromean.pd"), "--triple".into(), "1,2,3".into()],
        vec!["milnor".into(), "--pd".into(), f("borromean_braid.pd"), "--sidecar".into(), f("borromean_braid.json")],
        vec!["milnor".into(), "--pd".into(), f("unlink3.pd"), "--sidecar".into(), f("unlink3.json")],
        vec!["milnor".into(), "--pd".into(), f("hopf.pd"), "--sidecar".into(), f("hopf.json")],
        vec!["lemma-b2".into(), "--in".into(), f("degree1_framings.json")],
        vec!["lemma-b2".into(), "--in".into(), f("degree1_borromean.json")],
        vec!["lemma-b2".into(), "--in".into(), f("degree1_mixed.json")],
    ];
    cmds.into_iter().map(|c| std::iter::once("splitkit".to_string()).chain(c).collect()).collect()
}

/// Whether a command prints a diagram element.
pub fn emits_element(cmd: &[String]) -> bool {
    matches!(
        cmd[1].as_str(),
        "normal-form" | "pairing" | "kappa" | "tripods" | "glue" | "splitting-rhs" | "alt-sum" | "lemma-b2"
    )
}

/// A class `S(span α)` with essential subspaces `S(β + A α)`; `A` symmetric
/// when `isotropic`.
pub struct RandomClass {
    pub cls: SurgeryClass,
    pub s: Vec<Vec<i64>>,
    pub g: usize,
}

impl RandomClass {
    pub fn new<R: Rng>(rng: &mut R, g: usize) -> Self {
        let s = random_symplectic(rng, g);
        let lag = (0..g).map(|i| (0..2 * g).map(|r| q(s[r][i])).collect()).collect();
        let cls = SurgeryClass::new(SymplecticSpace::standard(g), lag).unwrap();
        RandomClass { cls, s, g }
    }

    pub fn subspace<R: Rng>(&self, rng: &mut R, name: &str, isotropic: bool) -> EssentialSubspace {
        let g = self.g;
        let mut a = vec![vec![Q::zero(); g]; g];
        for i in 0..g {
            for j in 0..g {
                if isotropic && j < i {
                    a[i][j] = a[j][i].clone();
                } else {
                    a[i][j] = qr(rng.gen_range(-3..=3), rng.gen_range(1..=2));
                }
            }
        }
        let basis = (0..g)
            .map(|i| {
                // coordinates β_i + Σ_j a_ij α_j, pushed through S
                let mut coord = vec![Q::zero(); 2 * g];
                coord[g + i] = q(1);
                for j in 0..g {
                    coord[j] = a[i][j].clone();
                }
                (0..2 * g).map(|r| (0..2 * g).map(|c| q(self.s[r][c]) * &coord[c]).sum()).collect()
            })
            .collect();
        EssentialSubspace::new(name, basis)
    }
}

pub fn random_linking<R: Rng>(rng: &mut R, g: usize, n: usize, tag: &str) -> LinkingForm {
    let mut matrix = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = qr(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            matrix[i][j] = v.clone();
            matrix[j][i] = v;
        }
    }
    let classes = (0..n).map(|_| (0..2 * g).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
    LinkingForm { matrix, classes, tag: tag.into() }
}

/// A product of `count` tripods plus a single tripod, each on three distinct colors.
pub fn random_tripods<R: Rng>(rng: &mut R, src: &EssentialSubspace, count: usize) -> DiagramElement {
    use rand::seq::SliceRandom;
    let mut idx: Vec<usize> = (0..src.basis().len()).collect();
    let mut tripod = |rng: &mut R| {
        idx.shuffle(rng);
        JacobiDiagram::tripod(src.color(idx[0]), src.color(idx[1]), src.color(idx[2]))
    };
    let mut e = DiagramElement::zero(src.colors());
    let mut d = JacobiDiagram::empty();
    for _ in 0..count {
        d = d.disjoint_union(&tripod(rng));
    }
    e.add_diagram(&d, q(1));
    e.add_diagram(&tripod(rng), qr(1, 2));
    e
}

pub fn block(basis: &[&str], mu: &[([usize; 3], i64)]) -> Block {
    let mut t = Trivector::zero();
    for (idx, x) in mu {
        t.add(*idx, q(*x));
    }
    Block { basis: basis.iter().map(|s| Color::new(s)).collect(), mu: t }
}

pub fn identity_rho(blocks: &[Block]) -> (BTreeMap<Color, LinearColor>, ColorSet) {
    let labels: Vec<Color> = blocks.iter().flat_map(|b| b.basis.clone()).collect();
    let rho = labels.iter().map(|l| (l.clone(), unit_color(l))).collect();
    (rho, ColorSet::new(labels).unwrap())
}

pub fn family(blocks: Vec<Block>, ell: &[(usize, usize, Q)]) -> LPFamily {
    let n: usize = blocks.iter().map(|b| b.basis.len()).sum();
    let mut m = vec![vec![Q::zero(); n]; n];
    for (i, j, v) in ell {
        m[*i][*j] = v.clone();
        m[*j][*i] = v.clone();
    }
    let (rho, target) = identity_rho(&blocks);
    LPFamily::new(blocks, m, rho, target).unwrap()
}

/// Perfect matchings of `0..n`, by brute force.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let items: Vec<usize> = (0..n).collect();
    fn rec(rest: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&a, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        for (k, &b) in tail.iter().enumerate() {
            let remaining: Vec<usize> = tail.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect();
            acc.push((a, b));
            rec(&remaining, acc, out);
            acc.pop();
        }
    }
    rec(&items, &mut Vec::new(), &mut out);
    out
}

/// A random family with `r` blocks of dimension `dim`.
pub fn random_family<R: Rng>(rng: &mut R, r: usize, dim: usize, target: Option<&[&str]>) -> LPFamily {
    let names = ["a", "b", "c", "d", "e", "f", "g", "h", "i"];
    let mut blocks = Vec::new();
    for k in 0..r {
        let basis: Vec<&str> = names[k * dim..(k + 1) * dim].to_vec();
        let mut mu = Vec::new();
        for _ in 0..2 {
            if dim >= 3 {
                let mut idx: Vec<usize> = (0..dim).collect();
                idx.shuffle(rng);
                mu.push(([idx[0], idx[1], idx[2]], rng.gen_range(-2..=2)));
            }
        }
        blocks.push(block(&basis, &mu));
    }
    let n = r * dim;
    let mut m = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if i / dim != j / dim && rng.gen_bool(0.6) {
                let v = qr(rng.gen_range(-3..=3), rng.gen_range(1..=2));
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
    }
    let labels: Vec<Color> = blocks.iter().flat_map(|b| b.basis.clone()).collect();
    let (rho, target) = match target {
        None => identity_rho(&blocks),
        Some(t) => {
            let tc: Vec<Color> = t.iter().map(|s| Color::new(s)).collect();
            let rho = labels
                .iter()
                .map(|l| {
                    let img: LinearColor = tc
                        .iter()
                        .filter_map(|x| {
                            let v = q(rng.gen_range(-1..=1));
                            (!v.is_zero()).then(|| (x.clone(), v))
                        })
                        .collect();
                    (l.clone(), img)
                })
                .collect();
            (rho, ColorSet::new(tc).unwrap())
        }
    };
    LPFamily::new(blocks, m, rho, target).unwrap()
}

/// Closed form against literal gluing of the truncated strut exponentials,
/// compared on every output diagram with at most `legs` legs.
pub fn agrees_with_gluing(d: &Morphism, e: &Morphism, cap: usize, legs: usize) -> bool {
    let a_mid = d
        .y_part()
        .terms()
        .map(|(x, _)| x.legs().iter().filter(|l| l.as_str().ends_with('+')).count())
        .max()
        .unwrap_or(0);
    let closed = compose(d, e, cap).unwrap().expand(legs / 2);
    let brute = compose_by_gluing(d, e, legs, legs + (legs + a_mid).div_ceil(2), cap).unwrap();
    low_legs(&closed, legs) == low_legs(&brute, legs)
}
