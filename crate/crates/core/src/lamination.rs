//! Finite laminations: pairwise unlinked chord sets standing in for their
//! infinite counterparts, with the checks and derived objects built on them.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::angle::Angle;
use crate::chord::{chords_cross, Arc, Chord, CircleSet};
use crate::error::{Error, Result};
use crate::portrait::{critical_chord, CriticalPortrait};

/// A finite set of pairwise unlinked nondegenerate chords in canonical order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FiniteLamination {
    leaves: Vec<Chord>,
    depth: Option<u32>,
    source: String,
}

impl FiniteLamination {
    pub fn empty() -> Self {
        FiniteLamination { leaves: Vec::new(), depth: None, source: String::new() }
    }

    /// Canonicalizes, drops degenerate chords, and rejects any crossing pair.
    pub fn new<I: IntoIterator<Item = Chord>>(chords: I) -> Result<Self> {
        let set: BTreeSet<Chord> = chords.into_iter().filter(|c| !c.is_degenerate()).collect();
        let leaves: Vec<Chord> = set.into_iter().collect();
        if let Some((i, j)) = find_crossing(&leaves) {
            return Err(Error::CrossingPair(leaves[i].clone(), leaves[j].clone()));
        }
        Ok(FiniteLamination { leaves, depth: None, source: String::new() })
    }

    /// Trusts the caller: `leaves` sorted, distinct, nondegenerate, unlinked.
    pub(crate) fn from_canonical(leaves: Vec<Chord>) -> Self {
        debug_assert!(leaves.windows(2).all(|w| w[0] < w[1]));
        FiniteLamination { leaves, depth: None, source: String::new() }
    }

    pub fn with_provenance(mut self, depth: Option<u32>, source: impl Into<String>) -> Self {
        self.depth = depth;
        self.source = source.into();
        self
    }

    pub fn leaves(&self) -> &[Chord] {
        &self.leaves
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn depth(&self) -> Option<u32> {
        self.depth
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn contains(&self, l: &Chord) -> bool {
        self.leaves.binary_search(l).is_ok()
    }

    pub fn is_subset_of(&self, other: &FiniteLamination) -> bool {
        self.leaves.iter().all(|l| other.contains(l))
    }
}

pub fn lamination_new<I: IntoIterator<Item = Chord>>(chords: I) -> Result<FiniteLamination> {
    FiniteLamination::new(chords)
}

/// Finds a crossing pair among nondegenerate chords, if any.
pub(crate) fn find_crossing(chords: &[Chord]) -> Option<(usize, usize)> {
    let ends: Vec<(&Angle, &Angle)> = chords.iter().map(|c| (c.a(), c.b())).collect();
    laminar_violation(&ends)
}

/// Read as intervals `[a, b] ⊂ [0, 1)`, a non-crossing family is laminar:
/// any two intervals are nested or meet at most in an endpoint. Sorting by
/// `(a asc, b desc)` and keeping a stack of open intervals detects a
/// violation in `O(n log n)`.
pub(crate) fn laminar_violation<T: Ord>(iv: &[(T, T)]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..iv.len()).collect();
    order.sort_by(|&i, &j| iv[i].0.cmp(&iv[j].0).then_with(|| iv[j].1.cmp(&iv[i].1)));
    let mut stack: Vec<usize> = Vec::new();
    for &i in &order {
        let (a, b) = (&iv[i].0, &iv[i].1);
        while let Some(&top) = stack.last() {
            if iv[top].1 <= *a {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&top) = stack.last() {
            if iv[top].1 < *b {
                return Some((top.min(i), top.max(i)));
            }
        }
        stack.push(i);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiblingViolation {
    /// 1: image missing; 2: no pullback present; 3: no full sibling collection.
    pub condition: u8,
    pub leaf: Chord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SiblingReport {
    /// Leaves checked per condition 1..=3.
    pub checked: [usize; 3],
    /// Leaves skipped per condition 1..=3 (undecidable within the truncation).
    pub skipped: [usize; 3],
    pub violations: Vec<SiblingViolation>,
}

impl SiblingReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, condition: u8) -> impl Iterator<Item = &SiblingViolation> {
        self.violations.iter().filter(move |v| v.condition == condition)
    }
}

/// Least `n` with `σⁿ(ℓ)` critical, i.e. with a degenerate image one step
/// later; `None` when the forward orbit of `ℓ` never collapses.
pub fn generation(l: &Chord, d: u32) -> Option<u32> {
    let mut seen = HashSet::new();
    let mut cur = l.clone();
    let mut n = 0;
    loop {
        let img = cur.image(d);
        if img.is_degenerate() {
            return Some(n);
        }
        if !seen.insert(cur) {
            return None;
        }
        cur = img;
        n += 1;
    }
}

/// Checks the three sibling-invariance conditions on a finite set.
///
/// When the lamination declares a depth, the pullback condition is skipped
/// for leaves whose generation reaches that depth, since their pullbacks
/// lie beyond the truncation.
pub fn sibling_check(lam: &FiniteLamination, d: u32) -> SiblingReport {
    let mut report = SiblingReport::default();
    let leaves = lam.leaves();
    let images: Vec<Chord> = leaves.iter().map(|l| l.image(d)).collect();
    let image_set: HashSet<&Chord> = images.iter().collect();
    let mut by_image: HashMap<&Chord, Vec<usize>> = HashMap::new();
    for (i, img) in images.iter().enumerate() {
        if !img.is_degenerate() {
            by_image.entry(img).or_default().push(i);
        }
    }

    for (i, l) in leaves.iter().enumerate() {
        let img = &images[i];

        report.checked[0] += 1;
        if !img.is_degenerate() && !lam.contains(img) {
            report.violations.push(SiblingViolation { condition: 1, leaf: l.clone() });
        }

        let boundary = match lam.depth() {
            Some(depth) => generation(l, d).is_some_and(|g| g >= depth),
            None => false,
        };
        if boundary {
            report.skipped[1] += 1;
        } else {
            report.checked[1] += 1;
            if !image_set.contains(l) {
                report.violations.push(SiblingViolation { condition: 2, leaf: l.clone() });
            }
        }

        if img.is_degenerate() {
            report.skipped[2] += 1;
        } else {
            report.checked[2] += 1;
            let group = &by_image[img];
            if !has_sibling_collection(leaves, group, i, d as usize) {
                report.violations.push(SiblingViolation { condition: 3, leaf: l.clone() });
            }
        }
    }
    report
}

fn has_sibling_collection(leaves: &[Chord], group: &[usize], start: usize, d: usize) -> bool {
    fn extend(leaves: &[Chord], group: &[usize], chosen: &mut Vec<usize>, from: usize, d: usize) -> bool {
        if chosen.len() == d {
            return true;
        }
        for k in from..group.len() {
            let j = group[k];
            if chosen.iter().all(|&c| leaves[c].is_disjoint_from(&leaves[j])) {
                chosen.push(j);
                if extend(leaves, group, chosen, k + 1, d) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let others: Vec<usize> = group.iter().copied().filter(|&j| j != start).collect();
    extend(leaves, &others, &mut vec![start], 0, d)
}

/// True iff no chord of the portrait crosses a leaf.
pub fn compat(k: &CriticalPortrait, lam: &FiniteLamination) -> bool {
    first_crossing(k, lam).is_none()
}

/// First `(portrait chord, leaf)` crossing pair in canonical order.
pub fn first_crossing(k: &CriticalPortrait, lam: &FiniteLamination) -> Option<(Chord, Chord)> {
    for c in k.chords() {
        if let Some(l) = lam.leaves().iter().find(|l| chords_cross(c, l)) {
            return Some((c.clone(), l.clone()));
        }
    }
    None
}

/// The parameters `t` for which `critical_chord(t)` crosses no leaf, as a
/// closed subset of the circle with exact endpoints.
pub fn compatible_intervals(lam: &FiniteLamination) -> CircleSet {
    let third = Angle::new(2, 3); // shifting by −1/3
    let mut crossing: Vec<(Angle, Angle)> = Vec::new();
    for l in lam.leaves() {
        let mut cuts: Vec<Angle> =
            vec![l.a().clone(), l.b().clone(), l.a().rotate(&third), l.b().rotate(&third)];
        cuts.sort();
        cuts.dedup();
        for i in 0..cuts.len() {
            let (s, e) = (&cuts[i], &cuts[(i + 1) % cuts.len()]);
            let mid = Arc::open(s.clone(), e.clone()).midpoint();
            if chords_cross(&critical_chord(&mid), l) {
                crossing.push((s.clone(), e.clone()));
            }
        }
    }
    complement_of_open_arcs(&crossing)
}

/// Complement of a union of nonempty open arcs `(s, e)`.
pub(crate) fn complement_of_open_arcs(open: &[(Angle, Angle)]) -> CircleSet {
    if open.is_empty() {
        return CircleSet::Full;
    }
    let mut points: Vec<Angle> = open.iter().flat_map(|(s, e)| [s.clone(), e.clone()]).collect();
    points.sort();
    points.dedup();
    let n = points.len();
    let index = |x: &Angle| points.binary_search(x).expect("breakpoint");

    // Elementary interval i is (points[i], points[i+1 mod n]).
    let mut interval_cover = vec![0i64; n + 1];
    let mut point_cover = vec![0i64; n + 1];
    let add_range = |cover: &mut Vec<i64>, from: usize, to_excl: usize| {
        // cyclic range [from, to_excl) over indices mod n
        if from < to_excl {
            cover[from] += 1;
            cover[to_excl] -= 1;
        } else if from > to_excl || (from == to_excl && to_excl == n) {
            cover[from] += 1;
            cover[n] -= 1;
            cover[0] += 1;
            cover[to_excl] -= 1;
        }
    };
    for (s, e) in open {
        let (i, j) = (index(s), index(e));
        if n == 1 {
            // A single breakpoint: the arc is the circle minus that point.
            interval_cover[0] += 1;
            interval_cover[1] -= 1;
            continue;
        }
        if i == j {
            // the circle minus one point
            add_range(&mut interval_cover, 0, n);
            add_range(&mut point_cover, (i + 1) % n, i);
            continue;
        }
        add_range(&mut interval_cover, i, j);
        add_range(&mut point_cover, (i + 1) % n, j);
    }
    let prefix = |cover: &[i64]| -> Vec<bool> {
        let mut acc = 0;
        (0..n)
            .map(|k| {
                acc += cover[k];
                acc == 0
            })
            .collect()
    };
    let interval_free = prefix(&interval_cover);
    let point_free = prefix(&point_cover);

    if interval_free.iter().all(|&f| f) && point_free.iter().all(|&f| f) {
        return CircleSet::Full;
    }
    let mut arcs = Vec::new();
    for i in 0..n {
        let prev_interval = (i + n - 1) % n;
        if !point_free[i] || interval_free[prev_interval] {
            continue;
        }
        let mut j = i;
        while interval_free[j] {
            j = (j + 1) % n;
        }
        arcs.push(Arc::closed(points[i].clone(), points[j].clone()));
    }
    arcs.sort_by(|x, y| x.start.cmp(&y.start));
    CircleSet::Arcs(arcs)
}

/// Endpoint-wise distance between chords: the smaller, over the two ways of
/// matching endpoints, of the larger endpoint displacement.
pub fn chord_distance(x: &Chord, y: &Chord) -> BigRational {
    let straight = x.a().circle_distance(y.a()).max(x.b().circle_distance(y.b()));
    let swapped = x.a().circle_distance(y.b()).max(x.b().circle_distance(y.a()));
    straight.min(swapped)
}

/// Removes, until stable, every leaf with no other leaf within `eps`.
pub fn perfect_prune(lam: &FiniteLamination, eps: &BigRational) -> Result<FiniteLamination> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveResolution);
    }
    let eps_f = eps.to_f64().unwrap_or(f64::INFINITY) + 1e-9;
    let mut alive: Vec<Chord> = lam.leaves().to_vec();
    loop {
        let mut index: Vec<(f64, usize)> = alive
            .iter()
            .enumerate()
            .flat_map(|(i, l)| [(l.a().to_f64(), i), (l.b().to_f64(), i)])
            .collect();
        index.sort_by(|x, y| x.0.total_cmp(&y.0));
        let keys: Vec<f64> = index.iter().map(|p| p.0).collect();

        let has_neighbour = |i: usize| -> bool {
            let l = &alive[i];
            let x = l.a().to_f64();
            let windows: Vec<(f64, f64)> = if eps_f >= 0.5 {
                vec![(0.0, 1.0)]
            } else {
                let (lo, hi) = (x - eps_f, x + eps_f);
                let mut w = vec![(lo.max(0.0), hi.min(1.0))];
                if lo < 0.0 {
                    w.push((lo + 1.0, 1.0));
                }
                if hi > 1.0 {
                    w.push((0.0, hi - 1.0));
                }
                w
            };
            windows.into_iter().any(|(lo, hi)| {
                let from = keys.partition_point(|&k| k < lo);
                let to = keys.partition_point(|&k| k <= hi);
                index[from..to]
                    .iter()
                    .any(|&(_, j)| j != i && chord_distance(l, &alive[j]) <= *eps)
            })
        };
        let keep: Vec<bool> = (0..alive.len()).map(has_neighbour).collect();
        if keep.iter().all(|&k| k) {
            break;
        }
        alive = alive.into_iter().zip(keep).filter_map(|(l, k)| k.then_some(l)).collect();
    }
    Ok(FiniteLamination { leaves: alive, depth: lam.depth, source: lam.source.clone() })
}

/// Grand-orbit closure of `ℓ` inside `Λ`: the iterated images of `ℓ` that are
/// leaves, together with every leaf some iterate of which is one of them.
pub fn chief_approx(lam: &FiniteLamination, l: &Chord, d: u32) -> Result<FiniteLamination> {
    if !lam.contains(l) {
        return Err(Error::NotALeaf(l.clone()));
    }
    let forward = |start: &Chord| -> Vec<Chord> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut cur = start.clone();
        while !cur.is_degenerate() && seen.insert(cur.clone()) {
            out.push(cur.clone());
            cur = cur.image(d);
        }
        out
    };
    let images: HashSet<Chord> = forward(l).into_iter().filter(|c| lam.contains(c)).collect();
    let leaves: Vec<Chord> = lam
        .leaves()
        .iter()
        .filter(|m| forward(m).iter().any(|c| images.contains(c)))
        .cloned()
        .collect();
    Ok(FiniteLamination { leaves, depth: lam.depth, source: lam.source.clone() })
}

/// Some leaf of length at least `1/(d+1)`, if any.
pub fn exists_long_leaf(lam: &FiniteLamination, d: u32) -> Option<Chord> {
    let bound = BigRational::new(BigInt::from(1), BigInt::from(d + 1));
    lam.leaves().iter().find(|l| l.length() >= bound).cloned()
}

/// One piece of the boundary of a complementary region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryPiece {
    /// The whole circle (only for the empty lamination).
    Circle,
    /// An open circle arc traversed counterclockwise.
    Arc(Arc),
    Leaf(Chord),
}

/// Boundary word of a complementary region of a finite lamination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapWord {
    pub pieces: Vec<BoundaryPiece>,
}

impl GapWord {
    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.pieces.iter().filter_map(|p| match p {
            BoundaryPiece::Arc(a) => Some(a),
            _ => None,
        })
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Chord> {
        self.pieces.iter().filter_map(|p| match p {
            BoundaryPiece::Leaf(l) => Some(l),
            _ => None,
        })
    }

    /// Total length of the circular part of the boundary.
    pub fn circle_measure(&self) -> BigRational {
        if self.pieces.iter().any(|p| matches!(p, BoundaryPiece::Circle)) {
            return BigRational::from_integer(1.into());
        }
        self.arcs().map(Arc::length).fold(BigRational::zero(), |acc, l| acc + l)
    }

    /// Circle points on the boundary, sorted.
    pub fn vertices(&self) -> Vec<Angle> {
        let mut v: BTreeSet<Angle> = BTreeSet::new();
        for p in &self.pieces {
            match p {
                BoundaryPiece::Arc(a) => {
                    v.insert(a.start.clone());
                    v.insert(a.end.clone());
                }
                BoundaryPiece::Leaf(l) => {
                    v.insert(l.a().clone());
                    v.insert(l.b().clone());
                }
                BoundaryPiece::Circle => {}
            }
        }
        v.into_iter().collect()
    }
}

impl fmt::Display for GapWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match p {
                BoundaryPiece::Circle => write!(f, "circle")?,
                BoundaryPiece::Arc(a) => write!(f, "{a}")?,
                BoundaryPiece::Leaf(l) => write!(f, "<{l}>")?,
            }
        }
        Ok(())
    }
}

/// Complementary regions of the disk minus the leaves; there are always
/// `len + 1` of them. The outer region (containing angle 0 on its boundary)
/// comes first, then the region inside each leaf `[a, b]`, ordered by `a`
/// and then by decreasing `b`.
pub fn gaps_extract(lam: &FiniteLamination) -> Vec<GapWord> {
    let leaves = lam.leaves();
    if leaves.is_empty() {
        return vec![GapWord { pieces: vec![BoundaryPiece::Circle] }];
    }
    let mut order: Vec<usize> = (0..leaves.len()).collect();
    order.sort_by(|&i, &j| {
        let (x, y) = (&leaves[i], &leaves[j]);
        x.a().cmp(y.a()).then_with(|| y.b().cmp(x.b()))
    });
    // children[k] for leaf k; the root is index `leaves.len()`.
    let root = leaves.len();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); leaves.len() + 1];
    let mut stack: Vec<usize> = Vec::new();
    for &i in &order {
        while let Some(&top) = stack.last() {
            if leaves[top].b() <= leaves[i].a() {
                stack.pop();
            } else {
                break;
            }
        }
        children[*stack.last().unwrap_or(&root)].push(i);
        stack.push(i);
    }

    let mut out = Vec::with_capacity(leaves.len() + 1);
    let top = &children[root];
    let mut pieces = Vec::new();
    for (n, &c) in top.iter().enumerate() {
        pieces.push(BoundaryPiece::Leaf(leaves[c].clone()));
        let next = &leaves[top[(n + 1) % top.len()]];
        if leaves[c].b() != next.a() {
            pieces.push(BoundaryPiece::Arc(Arc::open(leaves[c].b().clone(), next.a().clone())));
        }
    }
    out.push(GapWord { pieces });

    for &i in &order {
        let l = &leaves[i];
        let mut pieces = vec![BoundaryPiece::Leaf(l.clone())];
        let mut cur = l.a().clone();
        for &c in &children[i] {
            let child = &leaves[c];
            if &cur != child.a() {
                pieces.push(BoundaryPiece::Arc(Arc::open(cur.clone(), child.a().clone())));
            }
            pieces.push(BoundaryPiece::Leaf(child.clone()));
            cur = child.b().clone();
        }
        if &cur != l.b() {
            pieces.push(BoundaryPiece::Arc(Arc::open(cur, l.b().clone())));
        }
        out.push(GapWord { pieces });
    }
    out
}
