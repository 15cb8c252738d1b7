//! Explicit set systems over edge ids.
//!
//! This is the brute-force side of the library: it materializes the whole
//! feasible family of a labelled graph by testing every edge subset, and
//! implements the delta-matroid operations (twisting, deletion, minors)
//! directly on that family. Families are kept as sorted bitmasks over the
//! ordered ground set.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::abelian::{GroupDescriptor, GroupElement};
use crate::labelled_graph::{EdgeId, EdgeSet, GraphError, LabelledGraph};

pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Bitmask families are stored in a `u64`.
pub const MAX_GROUND: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaError {
    #[error("graph has {edges} edges, above the enumeration cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("ground set of {0} elements exceeds the supported maximum of {MAX_GROUND}")]
    GroundTooLarge(usize),
    #[error("duplicate ground element {0}")]
    DuplicateElement(EdgeId),
    #[error("{0} is not in the ground set")]
    NotInGround(EdgeId),
    #[error("a set system needs at least one feasible set")]
    NoFeasibleSets,
    #[error("deletion undefined: every feasible set meets the deleted elements")]
    DeletionUndefined,
    #[error("correspondence does not cover ground element {0}")]
    IncompleteCorrespondence(EdgeId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A failure of the symmetric exchange axiom: no `f` in `X △ Y` makes
/// `X △ {e, f}` feasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeViolation {
    pub x: EdgeSet,
    pub y: EdgeSet,
    pub e: EdgeId,
}

impl fmt::Display for ExchangeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "X = {}, Y = {}, e = {}",
            format_set(&self.x),
            format_set(&self.y),
            self.e
        )
    }
}

pub fn format_set(set: &EdgeSet) -> String {
    let items: Vec<&str> = set.iter().map(EdgeId::as_str).collect();
    format!("{{{}}}", items.join(","))
}

/// A finite ground set with a non-empty family of feasible subsets.
#[derive(Debug, Clone)]
pub struct SetSystem {
    ground: Vec<EdgeId>,
    position: HashMap<EdgeId, usize>,
    feasibles: BTreeSet<u64>,
}

impl PartialEq for SetSystem {
    /// Compares by element ids; the order of the ground set is irrelevant.
    fn eq(&self, other: &Self) -> bool {
        if self.ground.len() != other.ground.len() || self.feasibles.len() != other.feasibles.len() {
            return false;
        }
        if self.ground.iter().any(|e| !other.position.contains_key(e)) {
            return false;
        }
        let ours: BTreeSet<EdgeSet> = self.feasible_sets().into_iter().collect();
        let theirs: BTreeSet<EdgeSet> = other.feasible_sets().into_iter().collect();
        ours == theirs
    }
}

impl Eq for SetSystem {}

impl SetSystem {
    pub fn new<I>(ground: Vec<EdgeId>, feasibles: I) -> Result<Self, DeltaError>
    where
        I: IntoIterator<Item = EdgeSet>,
    {
        let mut sys = Self::with_ground(ground)?;
        for f in feasibles {
            let m = sys.mask_of(&f)?;
            sys.feasibles.insert(m);
        }
        if sys.feasibles.is_empty() {
            return Err(DeltaError::NoFeasibleSets);
        }
        Ok(sys)
    }

    fn with_ground(ground: Vec<EdgeId>) -> Result<Self, DeltaError> {
        if ground.len() > MAX_GROUND {
            return Err(DeltaError::GroundTooLarge(ground.len()));
        }
        let mut position = HashMap::with_capacity(ground.len());
        for (i, e) in ground.iter().enumerate() {
            if position.insert(e.clone(), i).is_some() {
                return Err(DeltaError::DuplicateElement(e.clone()));
            }
        }
        Ok(Self {
            ground,
            position,
            feasibles: BTreeSet::new(),
        })
    }

    pub fn ground(&self) -> &[EdgeId] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.feasibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.feasibles.is_empty()
    }

    fn mask_of(&self, set: &EdgeSet) -> Result<u64, DeltaError> {
        set.iter().try_fold(0u64, |m, e| {
            self.position
                .get(e)
                .map(|&i| m | (1 << i))
                .ok_or_else(|| DeltaError::NotInGround(e.clone()))
        })
    }

    fn set_of(&self, mask: u64) -> EdgeSet {
        self.ground
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.clone())
            .collect()
    }

    pub fn feasible_sets(&self) -> Vec<EdgeSet> {
        self.feasibles.iter().map(|&m| self.set_of(m)).collect()
    }

    pub fn contains(&self, set: &EdgeSet) -> bool {
        self.mask_of(set).is_ok_and(|m| self.feasibles.contains(&m))
    }

    /// Verifies the symmetric exchange axiom over all pairs of feasible
    /// sets. Pairs are scanned in ascending bitmask order and the first
    /// violation found is returned.
    pub fn check_exchange_axiom(&self) -> Result<(), ExchangeViolation> {
        let n = self.ground.len();
        let dense: Option<Vec<bool>> = (n <= 24).then(|| {
            let mut v = vec![false; 1 << n];
            for &m in &self.feasibles {
                v[m as usize] = true;
            }
            v
        });
        let member = |m: u64| match &dense {
            Some(v) => v[m as usize],
            None => self.feasibles.contains(&m),
        };
        let mut repairs = vec![0u64; n];
        for &x in &self.feasibles {
            // repairs[e] = every f with X △ {e, f} feasible
            for (e, slot) in repairs.iter_mut().enumerate() {
                *slot = (0..n)
                    .filter(|&f| member(x ^ ((1 << e) | (1 << f))))
                    .fold(0, |acc, f| acc | (1 << f));
            }
            for &y in &self.feasibles {
                let diff = x ^ y;
                if let Some(e) = (0..n).find(|&e| diff >> e & 1 == 1 && repairs[e] & diff == 0) {
                    return Err(ExchangeViolation {
                        x: self.set_of(x),
                        y: self.set_of(y),
                        e: self.ground[e].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_delta_matroid(&self) -> bool {
        self.check_exchange_axiom().is_ok()
    }

    /// Replaces every feasible set `F` by `F △ X`.
    pub fn twist(&self, x: &EdgeSet) -> Result<Self, DeltaError> {
        let xm = self.mask_of(x)?;
        Ok(Self {
            ground: self.ground.clone(),
            position: self.position.clone(),
            feasibles: self.feasibles.iter().map(|&f| f ^ xm).collect(),
        })
    }

    /// Removes `X` from the ground set, keeping the feasible sets that
    /// avoid it.
    pub fn delete(&self, x: &EdgeSet) -> Result<Self, DeltaError> {
        let xm = self.mask_of(x)?;
        let kept: Vec<usize> = (0..self.ground.len()).filter(|i| xm >> i & 1 == 0).collect();
        let mut out = Self::with_ground(kept.iter().map(|&i| self.ground[i].clone()).collect())?;
        for &f in &self.feasibles {
            if f & xm == 0 {
                let compact = kept
                    .iter()
                    .enumerate()
                    .filter(|(_, &old)| f >> old & 1 == 1)
                    .fold(0u64, |m, (new, _)| m | (1 << new));
                out.feasibles.insert(compact);
            }
        }
        if out.feasibles.is_empty() {
            return Err(DeltaError::DeletionUndefined);
        }
        Ok(out)
    }

    /// Twist by `x`, then delete `y`.
    pub fn minor(&self, x: &EdgeSet, y: &EdgeSet) -> Result<Self, DeltaError> {
        self.twist(x)?.delete(y)
    }

    /// All feasible sets pairwise differ by an even number of elements,
    /// i.e. they all have the same parity.
    pub fn is_even(&self) -> bool {
        let mut parities = self.feasibles.iter().map(|f| f.count_ones() % 2);
        let first = parities.next();
        parities.all(|p| Some(p) == first)
    }

    /// `(loops, coloops)`: elements in no feasible set, and elements in
    /// every feasible set.
    pub fn loops_and_coloops(&self) -> (EdgeSet, EdgeSet) {
        let union = self.feasibles.iter().fold(0u64, |a, &f| a | f);
        let inter = self.feasibles.iter().fold(u64::MAX, |a, &f| a & f);
        let full = if self.ground.is_empty() { 0 } else { u64::MAX >> (64 - self.ground.len()) };
        (self.set_of(!union & full), self.set_of(inter & full))
    }

    /// Renames ground elements through `correspondence`, which must cover
    /// the whole ground set.
    pub fn rename(&self, correspondence: &BTreeMap<EdgeId, EdgeId>) -> Result<Self, DeltaError> {
        let ground = self
            .ground
            .iter()
            .map(|e| {
                correspondence
                    .get(e)
                    .cloned()
                    .ok_or_else(|| DeltaError::IncompleteCorrespondence(e.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = Self::with_ground(ground)?;
        out.feasibles = self.feasibles.clone();
        Ok(out)
    }

    /// Equality after renaming `self` through `correspondence`.
    pub fn equals_under(&self, other: &Self, correspondence: &BTreeMap<EdgeId, EdgeId>) -> Result<bool, DeltaError> {
        Ok(&self.rename(correspondence)? == other)
    }
}

/// Every acyclic gamma-nonzero edge set of `g`, found by testing all
/// `2^|E|` subsets against the defining conditions.
pub fn enumerate_gamma_graphic(g: &LabelledGraph) -> Result<SetSystem, DeltaError> {
    enumerate_gamma_graphic_with_cap(g, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_gamma_graphic_with_cap(g: &LabelledGraph, cap: usize) -> Result<SetSystem, DeltaError> {
    let n = g.edge_count();
    if n > cap.min(MAX_GROUND) {
        return Err(DeltaError::CapExceeded {
            edges: n,
            cap: cap.min(MAX_GROUND),
        });
    }
    let mut sys = SetSystem::with_ground(g.edges().iter().map(|e| e.id.clone()).collect())?;
    let mut mask = vec![false; n];
    for bits in 0u64..(1u64 << n) {
        for (i, slot) in mask.iter_mut().enumerate() {
            *slot = bits >> i & 1 == 1;
        }
        if g.is_acyclic_mask(&mask) && g.is_gamma_nonzero_mask(&mask) {
            sys.feasibles.insert(bits);
        }
    }
    debug_assert!(!sys.feasibles.is_empty());
    Ok(sys)
}

/// Relabels `g` over `Z_2`: zero labels stay zero, every nonzero label
/// becomes 1.
pub fn z2_reduction(g: &LabelledGraph) -> LabelledGraph {
    g.relabel(GroupDescriptor::Cyclic(2), |v| GroupElement::Cyclic {
        modulus: 2,
        value: u64::from(!v.label.is_zero()),
    })
    .expect("same topology, valid Z_2 labels")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelled_graph::edge_set;

    fn ids(v: &[&str]) -> Vec<EdgeId> {
        v.iter().map(|&s| EdgeId::from(s)).collect()
    }

    fn sys(ground: &[&str], fam: &[&[&str]]) -> SetSystem {
        SetSystem::new(ids(ground), fam.iter().map(|f| edge_set(f.iter().copied()))).unwrap()
    }

    fn z(modulus: u64, value: u64) -> GroupElement {
        GroupElement::Cyclic { modulus, value }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            SetSystem::new(ids(&["a"]), Vec::<EdgeSet>::new()).unwrap_err(),
            DeltaError::NoFeasibleSets
        );
        assert_eq!(
            SetSystem::new(ids(&["a"]), [edge_set(["b"])]).unwrap_err(),
            DeltaError::NotInGround("b".into())
        );
        assert_eq!(
            SetSystem::new(ids(&["a", "a"]), [EdgeSet::new()]).unwrap_err(),
            DeltaError::DuplicateElement("a".into())
        );
    }

    #[test]
    fn exchange_axiom_examples() {
        assert!(sys(&["e"], &[&[], &["e"]]).check_exchange_axiom().is_ok());
        // {∅, {a,b}} is an even delta-matroid: f = b repairs e = a.
        assert!(sys(&["a", "b"], &[&[], &["a", "b"]]).check_exchange_axiom().is_ok());
        let v = sys(&["a", "b", "c"], &[&[], &["a", "b", "c"]])
            .check_exchange_axiom()
            .unwrap_err();
        assert_eq!(
            v,
            ExchangeViolation {
                x: EdgeSet::new(),
                y: edge_set(["a", "b", "c"]),
                e: "a".into(),
            }
        );
        assert!(sys(&["a", "b"], &[&["a"], &["b"], &["a", "b"], &[]]).check_exchange_axiom().is_ok());
    }

    #[test]
    fn twist_examples() {
        let m = sys(&["a", "b"], &[&[], &["a"], &["a", "b"]]);
        assert_eq!(m.twist(&EdgeSet::new()).unwrap(), m);
        let x = edge_set(["a"]);
        assert_eq!(m.twist(&x).unwrap().twist(&x).unwrap(), m);
        assert_eq!(
            sys(&["e"], &[&[]]).twist(&edge_set(["e"])).unwrap(),
            sys(&["e"], &[&["e"]])
        );
        assert!(m.twist(&edge_set(["zz"])).is_err());
    }

    #[test]
    fn delete_examples() {
        let m = sys(&["e"], &[&[], &["e"]]);
        assert_eq!(m.delete(&EdgeSet::new()).unwrap(), m);
        assert_eq!(m.delete(&edge_set(["e"])).unwrap(), sys(&[], &[&[]]));
        let coloop = sys(&["e", "f"], &[&["e"], &["e", "f"]]);
        assert_eq!(coloop.delete(&edge_set(["e"])).unwrap_err(), DeltaError::DeletionUndefined);
        assert_eq!(coloop.delete(&edge_set(["f"])).unwrap(), sys(&["e"], &[&["e"]]));
    }

    #[test]
    fn minor_examples() {
        let m = sys(&["a", "b", "c"], &[&[], &["a", "b"], &["b", "c"], &["a", "c"]]);
        assert_eq!(m.minor(&EdgeSet::new(), &EdgeSet::new()).unwrap(), m);
        assert!(m.is_even());
        let n = m.minor(&edge_set(["a"]), &edge_set(["a"])).unwrap();
        assert_eq!(n, sys(&["b", "c"], &[&["b"], &["c"]]));
        assert!(n.is_even());
    }

    #[test]
    fn evenness_examples() {
        assert!(!sys(&["e"], &[&[], &["e"]]).is_even());
        assert!(sys(&["e"], &[&[]]).is_even());
    }

    #[test]
    fn loops_and_coloops_examples() {
        let m = sys(&["a", "b", "c"], &[&["a"], &["a", "b"]]);
        assert_eq!(m.loops_and_coloops(), (edge_set(["c"]), edge_set(["a"])));
        let empty = sys(&[], &[&[]]);
        assert_eq!(empty.loops_and_coloops(), (EdgeSet::new(), EdgeSet::new()));
    }

    #[test]
    fn rename_and_compare() {
        let m = sys(&["a", "b"], &[&[], &["a"]]);
        let target = sys(&["y", "x"], &[&["x"], &[]]);
        let corr = BTreeMap::from([("a".into(), "x".into()), ("b".into(), "y".into())]);
        assert!(m.equals_under(&target, &corr).unwrap());
        let partial = BTreeMap::from([("a".into(), "x".into())]);
        assert!(m.rename(&partial).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let lone = LabelledGraph::from_parts(
            GroupDescriptor::Cyclic(2),
            [("a", z(2, 1))],
            Vec::<(&str, &str, &str)>::new(),
        )
        .unwrap();
        assert_eq!(enumerate_gamma_graphic(&lone).unwrap(), sys(&[], &[&[]]));

        let edge = LabelledGraph::from_parts(
            GroupDescriptor::Cyclic(2),
            [("u", z(2, 1)), ("v", z(2, 1))],
            [("e", "u", "v")],
        )
        .unwrap();
        assert_eq!(enumerate_gamma_graphic(&edge).unwrap(), sys(&["e"], &[&[]]));

        let looped = LabelledGraph::from_parts(
            GroupDescriptor::Cyclic(3),
            [("u", z(3, 1)), ("v", z(3, 1))],
            [("e", "u", "v"), ("l", "u", "u")],
        )
        .unwrap();
        let m = enumerate_gamma_graphic(&looped).unwrap();
        assert!(m.loops_and_coloops().0.contains(&EdgeId::from("l")));
    }

    #[test]
    fn cap_is_enforced() {
        let n = 5;
        let vs: Vec<(String, GroupElement)> = (0..n).map(|i| (format!("v{i}"), z(2, 1))).collect();
        let es: Vec<(String, String, String)> = (0..n)
            .map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", (i + 1) % n)))
            .collect();
        let g = LabelledGraph::from_parts(GroupDescriptor::Cyclic(2), vs, es).unwrap();
        assert_eq!(
            enumerate_gamma_graphic_with_cap(&g, 4).unwrap_err(),
            DeltaError::CapExceeded { edges: 5, cap: 4 }
        );
        assert!(enumerate_gamma_graphic_with_cap(&g, 5).is_ok());
    }

    #[test]
    fn z2_reduction_on_z3_triangle() {
        let tri = LabelledGraph::from_parts(
            GroupDescriptor::Cyclic(3),
            ["a", "b", "c"].map(|v| (v, z(3, 1))),
            [("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")],
        )
        .unwrap();
        let red = z2_reduction(&tri);
        assert!(red.vertices().iter().all(|v| v.label == z(2, 1)));
        let before = enumerate_gamma_graphic(&tri).unwrap();
        let after = enumerate_gamma_graphic(&red).unwrap();
        assert_ne!(before, after);
        assert!(!before.is_even());
        // a spanning path has order 3: sum 0 in Z_3 but 1 in Z_2
        let path = edge_set(["ab", "bc"]);
        assert!(!before.contains(&path));
        assert!(after.contains(&path));
    }

    #[test]
    fn z2_reduction_is_identity_on_z2() {
        let g = LabelledGraph::from_parts(
            GroupDescriptor::Cyclic(2),
            [("a", z(2, 1)), ("b", z(2, 0))],
            [("ab", "a", "b")],
        )
        .unwrap();
        assert_eq!(z2_reduction(&g), g);
    }
}
