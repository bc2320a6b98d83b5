//! Deciding whether a group acting with a given type is the full
//! automorphism group of a generic curve of that type.
//!
//! Outside the triangle case, an action fails to be full exactly for the
//! critical shapes `(h₀, s) ∈ {(2,0), (1,2), (1,1), (0,4)}`, and then only if
//! every generating system of the type admits one of a few prescribed
//! automorphisms. Triangle actions (`h₀ = 0`, `s = 3`) are decided by
//! searching a group universe for an extension restricting to the type.
//!
//! Conjugation is written `a^b = b⁻¹ab`.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use crate::covers::{
    admissible_signatures_for, for_each_system, has_generating_system, Conjugation,
    GeneratingSystem, RamificationType, Target,
};
use crate::error::{Error, Result};
use crate::group::{extend_to_automorphism, Automorphism, Elem, FiniteGroup};
use crate::restriction::{locus_inclusion, Lemma2Tag};
use crate::Caps;

/// A letter of a word in the symbols of a generating system: symbol index
/// (`α₁, β₁, …, α_h, β_h, γ₁, …, γ_s`) and whether it is inverted.
pub type Letter = (usize, bool);
pub type Word = Vec<Letter>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionKind {
    /// `(2,0)`: invert the first handle, twisted inversion of the second.
    TwoHandles,
    /// `(1,2)`: invert the handle, swap the two points.
    HandleTwoPoints,
    /// `(1,1)`: invert the handle.
    Inversion,
    Sigma1,
    Sigma2,
    Sigma3,
}

/// A prescribed action on the symbols of a system of shape `(h₀, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrescribedAction {
    pub kind: ActionKind,
    pub h0: u32,
    pub s: usize,
    /// Image word of each symbol.
    pub images: Vec<Word>,
}

fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|&(s, i)| (s, !i)).collect()
}

/// `w^by = by⁻¹·w·by`.
fn conj(w: &[Letter], by: &[Letter]) -> Word {
    let mut out = inverse(by);
    out.extend_from_slice(w);
    out.extend_from_slice(by);
    out
}

fn sym(s: usize) -> Word {
    vec![(s, false)]
}

fn inv(s: usize) -> Word {
    vec![(s, true)]
}

impl PrescribedAction {
    fn new(kind: ActionKind, h0: u32, s: usize, images: Vec<Word>) -> PrescribedAction {
        PrescribedAction {
            kind,
            h0,
            s,
            images,
        }
    }

    pub fn symbol_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        let single = self.h0 == 1;
        for j in 1..=self.h0 {
            if single {
                out.push("α".to_string());
                out.push("β".to_string());
            } else {
                out.push(format!("α{j}"));
                out.push(format!("β{j}"));
            }
        }
        for i in 1..=self.s {
            out.push(format!("γ{i}"));
        }
        out
    }

    /// Evaluates the image words on a system's elements.
    pub fn evaluate(&self, group: &FiniteGroup, sys: &GeneratingSystem) -> Vec<Elem> {
        let values = sys.elements();
        self.images
            .iter()
            .map(|w| {
                w.iter().fold(0, |acc, &(s, i)| {
                    let x = if i { group.inv(values[s]) } else { values[s] };
                    group.mul(acc, x)
                })
            })
            .collect()
    }

    /// Whether the action extends to an automorphism for this system.
    pub fn extend(
        &self,
        group: &FiniteGroup,
        sys: &GeneratingSystem,
    ) -> Result<Option<Automorphism>> {
        let images = self.evaluate(group, sys);
        extend_to_automorphism(group, &sys.elements(), &images)
    }
}

impl fmt::Display for PrescribedAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.symbol_names();
        for (k, w) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} ↦ ", names[k])?;
            for &(s, i) in w {
                f.write_str(&names[s])?;
                if i {
                    f.write_str("⁻¹")?;
                }
            }
        }
        Ok(())
    }
}

/// Triangle shape: orbit genus 0 with three branch points.
pub fn is_exceptional_shape(h0: u32, s: usize) -> bool {
    (h0, s) == (0, 3)
}

fn is_critical(h0: u32, s: usize) -> bool {
    matches!((h0, s), (2, 0) | (1, 2) | (1, 1) | (0, 4))
}

/// The actions whose extension to an automorphism makes a system of shape
/// `(h₀, s)` non-full.
pub fn bad_actions_for(h0: u32, s: usize) -> Result<Vec<PrescribedAction>> {
    use ActionKind::*;
    let actions = match (h0, s) {
        (2, 0) => {
            // α₁ β₁ α₂ β₂ = 0 1 2 3
            let w: Word = vec![(2, false), (3, false), (0, true), (1, true)];
            vec![PrescribedAction::new(
                TwoHandles,
                2,
                0,
                vec![inv(0), inv(1), conj(&inv(2), &w), conj(&inv(3), &w)],
            )]
        }
        (1, 2) => {
            // α β γ₁ γ₂ = 0 1 2 3
            vec![PrescribedAction::new(
                HandleTwoPoints,
                1,
                2,
                vec![
                    inv(0),
                    inv(1),
                    conj(&sym(3), &[(0, true), (1, true)]),
                    conj(&sym(2), &[(1, true), (0, true)]),
                ],
            )]
        }
        (1, 1) => {
            // γ = [α,β]⁻¹ is carried along: [α⁻¹,β⁻¹]⁻¹ = βαβ⁻¹α⁻¹
            vec![PrescribedAction::new(
                Inversion,
                1,
                1,
                vec![
                    inv(0),
                    inv(1),
                    vec![(1, false), (0, false), (1, true), (0, true)],
                ],
            )]
        }
        (0, 4) => vec![
            PrescribedAction::new(
                Sigma1,
                0,
                4,
                vec![
                    sym(1),
                    sym(0),
                    conj(&sym(3), &sym(0)),
                    conj(&sym(2), &inv(1)),
                ],
            ),
            PrescribedAction::new(Sigma2, 0, 4, vec![sym(2), sym(3), sym(0), sym(1)]),
            PrescribedAction::new(
                Sigma3,
                0,
                4,
                vec![
                    sym(3),
                    conj(&sym(2), &sym(3)),
                    conj(&sym(1), &inv(0)),
                    sym(0),
                ],
            ),
        ],
        _ => return Err(Error::ShapeNotCritical(h0, s)),
    };
    Ok(actions)
}

/// Why an action is not full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A prescribed action extends to this automorphism for the system.
    Action {
        action: PrescribedAction,
        system: GeneratingSystem,
        automorphism: Automorphism,
    },
    /// A larger group acts with a type restricting to the given one.
    Extension {
        group: String,
        order: usize,
        index: usize,
        extension_type: RamificationType,
        case: Option<Lemma2Tag>,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Action { action, system, .. } => {
                write!(
                    f,
                    "{action} extends to an automorphism for the system {:?}",
                    system.elements()
                )
            }
            Witness::Extension {
                group, index, case, ..
            } => {
                write!(f, "the type is induced from {group} at index {index}")?;
                match case {
                    Some(tag) => write!(f, ", case {tag}"),
                    None => Ok(()),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Full,
    NotFull(Box<Witness>),
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullnessVerdict {
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl FullnessVerdict {
    fn full() -> FullnessVerdict {
        FullnessVerdict {
            verdict: Verdict::Full,
            notes: Vec::new(),
        }
    }

    fn not_full(w: Witness) -> FullnessVerdict {
        FullnessVerdict {
            verdict: Verdict::NotFull(Box::new(w)),
            notes: Vec::new(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.verdict == Verdict::Full
    }

    pub fn is_not_full(&self) -> bool {
        matches!(self.verdict, Verdict::NotFull(_))
    }

    /// `Full`, `NotFull` or `Indeterminate`.
    pub fn keyword(&self) -> &'static str {
        match self.verdict {
            Verdict::Full => "Full",
            Verdict::NotFull(_) => "NotFull",
            Verdict::Indeterminate => "Indeterminate",
        }
    }
}

/// Decides a single non-triangle system.
pub fn is_full_nonexceptional(
    group: &FiniteGroup,
    sys: &GeneratingSystem,
) -> Result<FullnessVerdict> {
    let (h0, s) = (sys.g0(), sys.elliptic.len());
    if is_exceptional_shape(h0, s) {
        return Err(Error::InvalidInput(
            "triangle systems need the extension search".into(),
        ));
    }
    if !is_critical(h0, s) {
        return Ok(FullnessVerdict::full());
    }
    for action in bad_actions_for(h0, s)? {
        if let Some(automorphism) = action.extend(group, sys)? {
            return Ok(FullnessVerdict::not_full(Witness::Action {
                action,
                system: sys.clone(),
                automorphism,
            }));
        }
    }
    Ok(FullnessVerdict::full())
}

/// Distinct orderings of a class multiset.
fn arrangements(classes: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = classes.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Decides a non-triangle type: full iff some system of the type, in some
/// ordering of its classes, admits none of the prescribed actions.
pub fn decide_nonexceptional_type(
    group: &FiniteGroup,
    ty: &RamificationType,
    node_budget: u64,
) -> Result<FullnessVerdict> {
    let s = ty.classes.len();
    if is_exceptional_shape(ty.g0, s) {
        return Err(Error::InvalidInput(
            "triangle types need the extension search".into(),
        ));
    }
    if !is_critical(ty.g0, s) {
        return Ok(FullnessVerdict::full());
    }
    let actions = bad_actions_for(ty.g0, s)?;
    let mut first_witness: Option<Witness> = None;
    let mut seen_system = false;
    let mut failure: Option<Error> = None;
    for order in arrangements(&ty.classes) {
        let positions: Vec<Vec<Elem>> = order
            .iter()
            .map(|&c| group.conjugacy_classes()[c].members.clone())
            .collect();
        let mut found_full = false;
        for_each_system(
            group,
            ty.g0,
            &positions,
            Conjugation::UpToInner,
            node_budget,
            &mut |sys| {
                seen_system = true;
                for action in &actions {
                    match action.extend(group, sys) {
                        Ok(Some(automorphism)) => {
                            if first_witness.is_none() {
                                first_witness = Some(Witness::Action {
                                    action: action.clone(),
                                    system: sys.clone(),
                                    automorphism,
                                });
                            }
                            return ControlFlow::Continue(());
                        }
                        Ok(None) => {}
                        Err(e) => {
                            failure = Some(e);
                            return ControlFlow::Break(());
                        }
                    }
                }
                found_full = true;
                ControlFlow::Break(())
            },
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        if found_full {
            return Ok(FullnessVerdict::full());
        }
    }
    match first_witness {
        Some(w) => Ok(FullnessVerdict::not_full(w)),
        None if !seen_system => Err(Error::InvalidInput(format!(
            "type {:?} has no generating system",
            ty.classes
        ))),
        None => unreachable!("every system produced a witness"),
    }
}

/// Indices at which a triangle action with induced periods `d` could sit
/// inside a larger triangle action as a maximal subgroup, with the clause
/// that would apply.
pub fn extension_patterns(d: &[u32], genus: u32, order: usize) -> Vec<(Lemma2Tag, usize)> {
    let mut d = d.to_vec();
    d.sort_unstable();
    let mut out = Vec::new();
    let hurwitz = 84 * (genus as usize - 1);
    let mut push = |tag, n: usize| {
        if order * n <= hurwitz && !out.contains(&(tag, n)) {
            out.push((tag, n));
        }
    };
    let multiset_eq = |mut v: Vec<u32>| {
        v.sort_unstable();
        v == d
    };
    if d[0] == d[1] || d[1] == d[2] {
        push(Lemma2Tag::IVa, 2);
    }
    if d[0] == d[2] {
        push(Lemma2Tag::IVb, 3);
    }
    for &m in &d {
        if m >= 2 && multiset_eq(vec![2, m, 2 * m]) {
            push(Lemma2Tag::IVc, 3);
        }
        if m >= 2 && multiset_eq(vec![3, m, 3 * m]) {
            push(Lemma2Tag::IVd, 4);
        }
    }
    let fixed = [
        ([4, 4, 5], 3, Lemma2Tag::IVe, 6),
        ([3, 3, 7], 2, Lemma2Tag::IVf, 8),
        ([2, 7, 7], 6, Lemma2Tag::IVg, 9),
        ([3, 8, 8], 15, Lemma2Tag::IVh, 10),
    ];
    for (dd, modulus, tag, n) in fixed {
        if d == dd && genus % modulus == 1 % modulus {
            push(tag, n);
        }
    }
    out
}

/// The indices a triangle action can have in a larger one.
pub const TRIANGLE_INDICES: [usize; 9] = [2, 3, 4, 6, 8, 9, 10, 12, 24];

/// A set of groups searched for extensions of triangle actions, with their
/// triangle types cached per genus.
pub struct ExtensionUniverse<'a> {
    groups: Vec<(String, &'a FiniteGroup)>,
    triangle_types: Vec<OnceLock<Vec<RamificationType>>>,
    genus: u32,
    caps: Caps,
}

impl<'a> ExtensionUniverse<'a> {
    pub fn new(
        groups: Vec<(String, &'a FiniteGroup)>,
        genus: u32,
        caps: Caps,
    ) -> ExtensionUniverse<'a> {
        let triangle_types = groups.iter().map(|_| OnceLock::new()).collect();
        ExtensionUniverse {
            groups,
            triangle_types,
            genus,
            caps,
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Triangle types of genus `self.genus` with a generating system.
    fn triangle_types(&self, k: usize) -> Result<&[RamificationType]> {
        if let Some(t) = self.triangle_types[k].get() {
            return Ok(t);
        }
        let group = self.groups[k].1;
        let mut out = Vec::new();
        for sig in admissible_signatures_for(self.genus, group) {
            if sig.g0 != 0 || sig.r() != 3 {
                continue;
            }
            for ty in crate::covers::types_for_signature(group, &sig) {
                if has_generating_system(group, Target::Type(&ty), self.caps.node_budget)? {
                    out.push(ty);
                }
            }
        }
        Ok(self.triangle_types[k].get_or_init(|| out))
    }
}

/// Decides a triangle type relative to an extension universe.
pub fn decide_exceptional_fullness(
    group: &FiniteGroup,
    ty: &RamificationType,
    universe: &ExtensionUniverse,
) -> Result<FullnessVerdict> {
    if !is_exceptional_shape(ty.g0, ty.classes.len()) {
        return Err(Error::InvalidInput("not a triangle type".into()));
    }
    if ty.genus != universe.genus {
        return Err(Error::InvalidInput(format!(
            "type of genus {} against a genus {} universe",
            ty.genus, universe.genus
        )));
    }
    let sig = ty.signature(group);
    let patterns = extension_patterns(&sig.periods, ty.genus, group.order());
    let caps = universe.caps;
    for (k, (name, k_group)) in universe.groups.iter().enumerate() {
        let n = k_group.order() / group.order();
        if k_group.order() % group.order() != 0 || !TRIANGLE_INDICES.contains(&n) {
            continue;
        }
        for k_type in universe.triangle_types(k)? {
            let inc = locus_inclusion(
                k_group,
                k_type,
                group,
                &sig,
                Some(ty),
                caps.lattice,
                caps.automorphisms,
            )?;
            if inc.class_level {
                let case = patterns.iter().find(|(_, m)| *m == n).map(|&(t, _)| t);
                return Ok(FullnessVerdict::not_full(Witness::Extension {
                    group: name.clone(),
                    order: k_group.order(),
                    index: n,
                    extension_type: k_type.clone(),
                    case,
                }));
            }
        }
    }
    let mut verdict = FullnessVerdict::full();
    if !patterns.is_empty() {
        let list: Vec<String> = patterns
            .iter()
            .map(|(t, n)| format!("{t} at index {n}"))
            .collect();
        verdict.notes.push(format!(
            "relative to a universe of {} groups; possible patterns: {}",
            universe.len(),
            list.join(", ")
        ));
    }
    Ok(verdict)
}

/// Decides any type: triangle types via the universe, others intrinsically.
/// A search that runs out of budget yields `Indeterminate` rather than an
/// error.
pub fn decide_type(
    group: &FiniteGroup,
    ty: &RamificationType,
    universe: &ExtensionUniverse,
) -> Result<FullnessVerdict> {
    let outcome = if is_exceptional_shape(ty.g0, ty.classes.len()) {
        decide_exceptional_fullness(group, ty, universe)
    } else {
        decide_nonexceptional_type(group, ty, universe.caps.node_budget)
    };
    match outcome {
        Err(e) if e.is_cap_exceeded() => Ok(FullnessVerdict {
            verdict: Verdict::Indeterminate,
            notes: vec![e.to_string()],
        }),
        other => other,
    }
}

/// Largest order a group acting on a genus-`g` curve can have.
pub fn hurwitz_bound(genus: u32) -> usize {
    84 * (genus as usize).saturating_sub(1)
}
