//! Depth-bounded Thurston pullback laminations of cubic critical portraits.
//!
//! The two critical chords cut the disk into three regions. Each region's
//! circular part is a union of arcs of total length 1/3, and σ₃ maps it
//! bijectively onto the circle once every arc is made half-open `(s, e]`.
//! A chord therefore has exactly one lift per region, obtained by joining
//! the preimages of its endpoints that the region owns.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::angle::{Angle, DEGREE};
use crate::chord::{Arc, Chord};
use crate::error::{Error, Result};
use crate::lamination::{gaps_extract, laminar_violation, FiniteLamination};
use crate::portrait::CriticalPortrait;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    /// Open circle arcs on the boundary of the region.
    pub arcs: Vec<Arc>,
}

impl Region {
    fn owns(&self, x: &Angle) -> bool {
        self.arcs
            .iter()
            .any(|a| Arc::half_open(a.start.clone(), a.end.clone()).contains(x))
    }
}

/// The three components of the disk minus the portrait's chords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionPartition {
    pub portrait: CriticalPortrait,
    pub regions: Vec<Region>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionIndex {
    Region(usize),
    /// The point is an endpoint of a portrait chord.
    Boundary(Angle),
}

impl fmt::Display for RegionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionIndex::Region(i) => write!(f, "region {i}"),
            RegionIndex::Boundary(x) => write!(f, "boundary {x}"),
        }
    }
}

impl RegionPartition {
    pub fn new(k: &CriticalPortrait) -> Result<Self> {
        if k.is_coincident() {
            return Err(Error::CoincidentChords(k.first().clone()));
        }
        let lam = FiniteLamination::new([k.first().clone(), k.second().clone()])?;
        let regions = gaps_extract(&lam)
            .into_iter()
            .map(|g| Region { arcs: g.arcs().cloned().collect() })
            .collect();
        Ok(RegionPartition { portrait: k.clone(), regions })
    }

    /// Index of the region owning `x` under the half-open convention.
    pub fn owner(&self, x: &Angle) -> usize {
        self.regions
            .iter()
            .position(|r| r.owns(x))
            .expect("half-open arcs partition the circle")
    }

    /// Lifts of `l`, one per region, in region order.
    pub fn lifts(&self, l: &Chord) -> [Chord; 3] {
        let mut a_lift: [Option<Angle>; 3] = [None, None, None];
        let mut b_lift: [Option<Angle>; 3] = [None, None, None];
        for p in l.a().preimages(DEGREE) {
            let i = self.owner(&p);
            a_lift[i] = Some(p);
        }
        for p in l.b().preimages(DEGREE) {
            let i = self.owner(&p);
            b_lift[i] = Some(p);
        }
        let lift = |i: usize| {
            Chord::new(
                a_lift[i].clone().expect("one preimage per region"),
                b_lift[i].clone().expect("one preimage per region"),
            )
        };
        [lift(0), lift(1), lift(2)]
    }
}

pub fn region_of(x: &Angle, p: &RegionPartition) -> RegionIndex {
    if p.portrait.chords().iter().any(|c| c.has_endpoint(x)) {
        return RegionIndex::Boundary(x.clone());
    }
    RegionIndex::Region(p.owner(x))
}

pub fn pull_back_chord(l: &Chord, p: &RegionPartition) -> [Chord; 3] {
    p.lifts(l)
}

/// Iterated lifts of `seeds`, grouped by generation. Generation 0 is the
/// seed set itself; generation `n + 1` holds the lifts of generation `n`
/// not seen before.
pub fn iterated_pullbacks(p: &RegionPartition, seeds: &[Chord], depth: u32) -> Vec<Vec<Chord>> {
    match FixedScale::new(p, seeds, depth) {
        Some(fs) => fs.iterate(seeds, depth),
        None => iterate_exact(p, seeds, depth),
    }
}

fn iterate_exact(p: &RegionPartition, seeds: &[Chord], depth: u32) -> Vec<Vec<Chord>> {
    let mut seen: BTreeSet<Chord> = seeds.iter().filter(|c| !c.is_degenerate()).cloned().collect();
    let mut layers = vec![seen.iter().cloned().collect::<Vec<_>>()];
    for _ in 0..depth {
        let frontier = layers.last().expect("nonempty");
        let lifted: Vec<Chord> = frontier.par_iter().flat_map_iter(|l| p.lifts(l)).collect();
        let fresh: BTreeSet<Chord> = lifted.into_iter().filter(|c| !seen.contains(c)).collect();
        seen.extend(fresh.iter().cloned());
        layers.push(fresh.into_iter().collect());
    }
    layers
}

/// Every angle met while lifting `depth` times has denominator dividing
/// `den = lcm(seed and portrait denominators) * 3^depth`, so when `den`
/// fits a machine word angles can be handled as numerators over `den`.
struct FixedScale {
    den: u64,
    /// `(region, start, end)` of each half-open arc `(start, end]`.
    arcs: Vec<(usize, u64, u64)>,
}

impl FixedScale {
    fn new(p: &RegionPartition, seeds: &[Chord], depth: u32) -> Option<Self> {
        let mut l = BigInt::one();
        let chords = seeds.iter().chain(p.portrait.chords());
        for x in chords.flat_map(|c| c.endpoints()) {
            l = l.lcm(x.denom());
        }
        let den = (l * BigInt::from(3u32).pow(depth)).to_u64()?;
        if den > u64::MAX / 4 {
            return None;
        }
        let mut fs = FixedScale { den, arcs: Vec::new() };
        for (i, r) in p.regions.iter().enumerate() {
            for a in &r.arcs {
                fs.arcs.push((i, fs.numer(&a.start), fs.numer(&a.end)));
            }
        }
        Some(fs)
    }

    fn numer(&self, x: &Angle) -> u64 {
        (x.as_ratio() * BigRational::from_integer(self.den.into()))
            .to_integer()
            .to_u64()
            .expect("denominator divides den")
    }

    fn chord(&self, (a, b): (u64, u64)) -> Chord {
        Chord::new(Angle::from_word(a, self.den), Angle::from_word(b, self.den))
    }

    fn owner(&self, x: u64) -> usize {
        let den = self.den;
        self.arcs
            .iter()
            .find(|&&(_, s, e)| {
                let off = (x + den - s) % den;
                off > 0 && off <= (e + den - s) % den
            })
            .map(|&(i, _, _)| i)
            .expect("half-open arcs partition the circle")
    }

    fn lifts(&self, (a, b): (u64, u64)) -> [(u64, u64); 3] {
        let mut lift = [(0, 0); 3];
        for k in 0..3 {
            let y = (a + k * self.den) / 3;
            lift[self.owner(y)].0 = y;
            let y = (b + k * self.den) / 3;
            lift[self.owner(y)].1 = y;
        }
        lift.map(|(x, y)| (x.min(y), x.max(y)))
    }

    fn iterate_words(&self, seeds: &[Chord], depth: u32) -> Vec<Vec<(u64, u64)>> {
        let mut seen: BTreeSet<(u64, u64)> = seeds
            .iter()
            .filter(|c| !c.is_degenerate())
            .map(|c| (self.numer(c.a()), self.numer(c.b())))
            .collect();
        let mut layers: Vec<Vec<(u64, u64)>> = vec![seen.iter().copied().collect()];
        for _ in 0..depth {
            let frontier = layers.last().expect("nonempty");
            let lifted: Vec<(u64, u64)> = frontier.par_iter().flat_map_iter(|&l| self.lifts(l)).collect();
            let fresh: BTreeSet<(u64, u64)> = lifted.into_iter().filter(|c| !seen.contains(c)).collect();
            seen.extend(fresh.iter().copied());
            layers.push(fresh.into_iter().collect());
        }
        layers
    }

    fn iterate(&self, seeds: &[Chord], depth: u32) -> Vec<Vec<Chord>> {
        self.iterate_words(seeds, depth)
            .into_iter()
            .map(|layer| layer.into_iter().map(|c| self.chord(c)).collect())
            .collect()
    }

    /// Union of all layers, validated in word arithmetic.
    fn lamination(&self, seeds: &[Chord], depth: u32) -> Result<FiniteLamination> {
        let mut all: Vec<(u64, u64)> = self.iterate_words(seeds, depth).into_iter().flatten().collect();
        all.sort_unstable();
        if let Some((i, j)) = laminar_violation(&all) {
            return Err(Error::CrossingPair(self.chord(all[i]), self.chord(all[j])));
        }
        Ok(FiniteLamination::from_canonical(all.into_iter().map(|c| self.chord(c)).collect()))
    }
}

/// Leaves of the pullback lamination grouped by generation.
pub fn pullback_layers(k: &CriticalPortrait, depth: u32) -> Result<Vec<Vec<Chord>>> {
    let p = RegionPartition::new(k)?;
    Ok(iterated_pullbacks(&p, &[k.first().clone(), k.second().clone()], depth))
}

/// `L₀ = {c, y}`, `L_{n+1} = L_n ∪ lifts(L_n)`; returns `L_depth`.
pub fn build_pullback(k: &CriticalPortrait, depth: u32) -> Result<FiniteLamination> {
    let p = RegionPartition::new(k)?;
    let seeds = [k.first().clone(), k.second().clone()];
    let lam = match FixedScale::new(&p, &seeds, depth) {
        Some(fs) => fs.lamination(&seeds, depth)?,
        None => FiniteLamination::new(iterate_exact(&p, &seeds, depth).into_iter().flatten())?,
    };
    Ok(lam.with_provenance(Some(depth), format!("pullback({k})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::portrait_new;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn ch(s: &str) -> Chord {
        s.parse().unwrap()
    }

    fn k_strong() -> CriticalPortrait {
        portrait_new(&a("1/12"), &a("7/12")).unwrap()
    }

    #[test]
    fn partition_of_two_disjoint_chords() {
        let p = RegionPartition::new(&k_strong()).unwrap();
        assert_eq!(p.regions.len(), 3);
        assert_eq!(
            p.regions[0].arcs,
            vec![Arc::open(a("5/12"), a("7/12")), Arc::open(a("11/12"), a("1/12"))]
        );
        assert_eq!(p.regions[1].arcs, vec![Arc::open(a("1/12"), a("5/12"))]);
        assert_eq!(p.regions[2].arcs, vec![Arc::open(a("7/12"), a("11/12"))]);
    }

    #[test]
    fn region_of_examples() {
        let p = RegionPartition::new(&k_strong()).unwrap();
        assert_eq!(region_of(&a("1/6"), &p), RegionIndex::Region(1));
        assert_eq!(region_of(&Angle::zero(), &p), RegionIndex::Region(0));
        assert_eq!(region_of(&a("1/2"), &p), RegionIndex::Region(0));
        assert_eq!(region_of(&a("1/12"), &p), RegionIndex::Boundary(a("1/12")));
    }

    #[test]
    fn lift_examples() {
        let p = RegionPartition::new(&k_strong()).unwrap();
        let mut lifts = pull_back_chord(&ch("1/12-5/12"), &p).to_vec();
        lifts.sort();
        assert_eq!(lifts, vec![ch("1/36-17/36"), ch("5/36-13/36"), ch("25/36-29/36")]);

        let x = a("1/7");
        let degenerate = pull_back_chord(&Chord::new(x.clone(), x.clone()), &p);
        let mut points: Vec<Angle> = degenerate
            .iter()
            .map(|c| {
                assert!(c.is_degenerate());
                c.a().clone()
            })
            .collect();
        points.sort();
        assert_eq!(points, x.preimages(3));
    }

    #[test]
    fn boundary_preimages_use_half_open_arcs() {
        // {0,1/3} has the critical value 0 as an endpoint, so one preimage of
        // each endpoint of the diameter {0,1/2} sits on a portrait chord.
        let k = portrait_new(&Angle::zero(), &a("1/2")).unwrap();
        let p = RegionPartition::new(&k).unwrap();
        let mut lifts = pull_back_chord(&ch("0-1/2"), &p).to_vec();
        lifts.sort();
        assert_eq!(lifts, vec![ch("0-1/2"), ch("1/6-1/3"), ch("2/3-5/6")]);
        let lam = build_pullback(&k, 4).unwrap();
        assert!(lam.len() > 2);
    }

    #[test]
    fn shared_endpoint_portrait() {
        let k = portrait_new(&Angle::zero(), &a("1/3")).unwrap();
        let p = RegionPartition::new(&k).unwrap();
        for r in &p.regions {
            let total: num_rational::BigRational = r.arcs.iter().map(Arc::length).sum();
            assert_eq!(total, num_rational::BigRational::new(1.into(), 3.into()));
        }
        let lam = build_pullback(&k, 5).unwrap();
        assert_eq!(lam.depth(), Some(5));
    }

    #[test]
    fn build_examples() {
        let k = k_strong();
        let l0 = build_pullback(&k, 0).unwrap();
        assert_eq!(l0.leaves(), &[ch("1/12-5/12"), ch("7/12-11/12")]);
        let l1 = build_pullback(&k, 1).unwrap();
        assert_eq!(l1.len(), 8);
        assert!(l1.contains(&ch("25/36-29/36")));
        assert!(l0.is_subset_of(&l1));
        assert!(matches!(portrait_new(&Angle::zero(), &a("1/6")), Err(Error::CrossingChords(_, _))));
    }

    #[test]
    fn generic_leaf_count() {
        let k = k_strong();
        for n in 0..5u32 {
            assert_eq!(build_pullback(&k, n).unwrap().len(), 3usize.pow(n + 1) - 1);
        }
    }

    #[test]
    fn word_arithmetic_matches_exact_lifting() {
        for (t, s) in [("1/12", "7/12"), ("0", "1/2"), ("0", "1/3"), ("1/7", "4/7"), ("2/9", "5/9"), ("3/10", "7/10")] {
            let k = portrait_new(&a(t), &a(s)).unwrap();
            let p = RegionPartition::new(&k).unwrap();
            let seeds = [k.first().clone(), k.second().clone()];
            let fs = FixedScale::new(&p, &seeds, 5).unwrap();
            let exact = iterate_exact(&p, &seeds, 5);
            assert_eq!(fs.iterate(&seeds, 5), exact, "{k}");
            let lam = FiniteLamination::new(exact.into_iter().flatten()).unwrap();
            assert_eq!(fs.lamination(&seeds, 5).unwrap(), lam);
        }
    }

    #[test]
    fn coincident_chords_rejected() {
        let k = portrait_new(&a("1/12"), &a("1/12")).unwrap();
        assert!(matches!(build_pullback(&k, 1), Err(Error::CoincidentChords(_))));
    }
}
