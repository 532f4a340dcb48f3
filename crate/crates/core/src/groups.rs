//! The finite reflection group `G4` (24 linear maps) and the affine group
//! `G̃4 = 2Λ ⋊ G4` generated by `r₁`, `r_i` and `r₁′ = t₂ ∘ r₁`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::arrangement::{enumerate_hyperplanes, hyperplane_of, Hyperplane, Window};
use crate::hquat::{int, Quat, ZetaPower};
use crate::isometry::{EuclideanMap, IsometryClass};
use crate::lattices::{in_lattice, LatticeTag, LineLabel, RootSystem};

/// `q ζ q⁻¹`, the linear factor of the order-3 reflection `r_q`.
fn conjugated_zeta(q: LineLabel) -> Quat {
    let q = q.to_quat();
    &(&q * &Quat::zeta()) * &q.conj()
}

/// `r_q(x) = (q ζ q⁻¹) x ζ`, rotating `qℂ` by `2π/3`.
pub fn r_q(q: LineLabel) -> EuclideanMap {
    EuclideanMap::linear(conjugated_zeta(q), ZetaPower::new(1)).expect("unit")
}

pub fn r1() -> EuclideanMap {
    r_q(LineLabel::One)
}

pub fn r_i() -> EuclideanMap {
    r_q(LineLabel::I)
}

/// `r₁′(x) = ζ x ζ + 2`, the copy of `r₁` fixing `1+k`.
pub fn r1_prime() -> EuclideanMap {
    EuclideanMap::translation(Quat::from_ints(2, 0, 0, 0)).compose(&r1())
}

/// The three generators followed by their inverses.
pub fn generators_with_inverses() -> Vec<EuclideanMap> {
    let gens = [r1(), r_i(), r1_prime()];
    gens.iter().cloned().chain(gens.iter().map(EuclideanMap::invert)).collect()
}

/// Names the 24 elements `±L_q`, `±r_q`, `±r_q²`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ElementLabel {
    pub negated: bool,
    pub kind: LabelKind,
    pub line: LineLabel,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum LabelKind {
    Left,
    Reflection,
    ReflectionSquared,
}

impl ElementLabel {
    pub fn map(&self) -> EuclideanMap {
        let base = match self.kind {
            LabelKind::Left => EuclideanMap::left(self.line.to_quat()).expect("unit"),
            LabelKind::Reflection => r_q(self.line),
            LabelKind::ReflectionSquared => r_q(self.line).pow(2),
        };
        if self.negated {
            EuclideanMap::left(-Quat::one()).expect("unit").compose(&base)
        } else {
            base
        }
    }

    pub fn all() -> Vec<ElementLabel> {
        let mut out = Vec::with_capacity(24);
        for kind in [LabelKind::Left, LabelKind::Reflection, LabelKind::ReflectionSquared] {
            for line in LineLabel::ALL {
                for negated in [false, true] {
                    out.push(ElementLabel { negated, kind, line });
                }
            }
        }
        out
    }
}

impl fmt::Display for ElementLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negated { "-" } else { "+" };
        let q = self.line.name();
        match self.kind {
            LabelKind::Left => write!(f, "{sign}L_{q}"),
            LabelKind::Reflection => write!(f, "{sign}r_{q}"),
            LabelKind::ReflectionSquared => write!(f, "{sign}r_{q}^2"),
        }
    }
}

/// The linear group `G4`, closed under composition.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    elements: Vec<EuclideanMap>,
    labels: Vec<Option<ElementLabel>>,
}

impl FiniteGroupTable {
    pub fn elements(&self) -> &[EuclideanMap] {
        &self.elements
    }

    pub fn labels(&self) -> &[Option<ElementLabel>] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, f: &EuclideanMap) -> bool {
        self.elements.binary_search(f).is_ok()
    }

    pub fn label_of(&self, f: &EuclideanMap) -> Option<ElementLabel> {
        self.elements.binary_search(f).ok().and_then(|n| self.labels[n])
    }
}

/// Closure of `{r₁, r_i}` under composition.
pub fn generate_g4() -> &'static FiniteGroupTable {
    static G4: OnceLock<FiniteGroupTable> = OnceLock::new();
    G4.get_or_init(|| {
        let gens = [r1(), r_i()];
        let mut seen: BTreeSet<EuclideanMap> = BTreeSet::new();
        let mut frontier = vec![EuclideanMap::identity()];
        seen.insert(EuclideanMap::identity());
        while let Some(f) = frontier.pop() {
            for g in &gens {
                let h = g.compose(&f);
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        let named: Vec<(EuclideanMap, ElementLabel)> =
            ElementLabel::all().into_iter().map(|l| (l.map(), l)).collect();
        let elements: Vec<EuclideanMap> = seen.into_iter().collect();
        let labels = elements
            .iter()
            .map(|f| named.iter().find(|(m, _)| m == f).map(|(_, l)| *l))
            .collect();
        FiniteGroupTable { elements, labels }
    })
}

/// `f ∈ G̃4` iff its linear part is in `G4` and its translation part in 2Λ.
pub fn membership(f: &EuclideanMap) -> bool {
    generate_g4().contains(&f.linear_part()) && in_lattice(f.v(), LatticeTag::TwoLambda)
}

/// Every product of at most `max_len` generators or inverses, each listed
/// once with its shortest word length. Ordered by length, then canonically.
pub fn bfs_words(max_len: usize) -> Vec<(EuclideanMap, usize)> {
    let gens = generators_with_inverses();
    let mut seen: HashSet<EuclideanMap> = HashSet::new();
    seen.insert(EuclideanMap::identity());
    let mut out = vec![(EuclideanMap::identity(), 0)];
    let mut frontier = vec![EuclideanMap::identity()];
    for len in 1..=max_len {
        let mut next: Vec<EuclideanMap> = Vec::new();
        for f in &frontier {
            for g in &gens {
                let h = f.compose(g);
                if !seen.contains(&h) {
                    seen.insert(h.clone());
                    next.push(h);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned().map(|h| (h, len)));
        frontier = next;
    }
    out
}

/// All elements of `G̃4` fixing `x`: for each linear part `A` the only
/// candidate is `t_{x − A x} ∘ A`.
pub fn stabilizer(x: &Quat) -> Vec<EuclideanMap> {
    generate_g4()
        .elements()
        .iter()
        .filter_map(|a| {
            let v = x - &a.apply(x);
            in_lattice(&v, LatticeTag::TwoLambda)
                .then(|| EuclideanMap::translation(v).compose(a))
        })
        .collect()
}

/// `G̃4` as a handle: generators, linear part table and translation lattice.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    pub generators: Vec<EuclideanMap>,
    pub linear_table: &'static FiniteGroupTable,
    pub translation_tag: LatticeTag,
}

impl Default for AffineGroup {
    fn default() -> Self {
        AffineGroup {
            generators: vec![r1(), r_i(), r1_prime()],
            linear_table: generate_g4(),
            translation_tag: LatticeTag::TwoLambda,
        }
    }
}

impl AffineGroup {
    pub fn contains(&self, f: &EuclideanMap) -> bool {
        self.linear_table.contains(&f.linear_part()) && in_lattice(f.v(), self.translation_tag)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationReport {
    pub max_len: usize,
    pub words: usize,
    /// Translation vectors found, sorted.
    pub translations: Vec<Quat>,
    pub all_in_two_lambda: bool,
    /// Shortest word length producing `t₂`.
    pub t2_length: Option<usize>,
    pub covers_two_phi: bool,
}

impl TranslationReport {
    pub fn passed(&self) -> bool {
        self.all_in_two_lambda && self.t2_length.is_some()
    }
}

pub fn verify_translation_fact(max_len: usize) -> TranslationReport {
    let words = bfs_words(max_len);
    let mut translations: Vec<Quat> = Vec::new();
    let mut t2_length = None;
    let two = Quat::from_ints(2, 0, 0, 0);
    for (f, len) in &words {
        if f.classify() == IsometryClass::Translation {
            if *f.v() == two && t2_length.is_none() {
                t2_length = Some(*len);
            }
            translations.push(f.v().clone());
        }
    }
    translations.sort();
    let all_in_two_lambda = translations.iter().all(|v| in_lattice(v, LatticeTag::TwoLambda));
    let covers_two_phi = RootSystem::standard()
        .elements()
        .iter()
        .all(|u| translations.binary_search(&u.scale(&int(2))).is_ok());
    TranslationReport {
        max_len,
        words: words.len(),
        translations,
        all_in_two_lambda,
        t2_length,
        covers_two_phi,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionReport {
    pub max_len: usize,
    pub reflections: usize,
    /// Reflections whose fixed line is not one of the listed hyperplanes.
    pub unmatched: Vec<EuclideanMap>,
    /// Distinct hyperplanes met, sorted.
    pub hyperplanes: Vec<Hyperplane>,
    /// How many hyperplanes of the window were produced by some word.
    pub window_hyperplanes_found: usize,
    pub window_hyperplanes: usize,
}

impl ReflectionReport {
    pub fn passed(&self) -> bool {
        self.unmatched.is_empty()
    }
}

pub fn verify_reflection_fact(window: &Window, max_len: usize) -> ReflectionReport {
    let words = bfs_words(max_len);
    let mut reflections = 0;
    let mut unmatched = Vec::new();
    let mut found: BTreeSet<Hyperplane> = BTreeSet::new();
    for (f, _) in &words {
        if f.classify() != IsometryClass::Reflection {
            continue;
        }
        reflections += 1;
        match hyperplane_of(f) {
            Ok(h) if h.fixed_set_matches(&f.fixed_set()) => {
                found.insert(h);
            }
            _ => unmatched.push(f.clone()),
        }
    }
    let window_planes = enumerate_hyperplanes(window);
    let window_hyperplanes_found = window_planes.iter().filter(|h| found.contains(h)).count();
    ReflectionReport {
        max_len,
        reflections,
        unmatched,
        hyperplanes: found.into_iter().collect(),
        window_hyperplanes_found,
        window_hyperplanes: window_planes.len(),
    }
}
