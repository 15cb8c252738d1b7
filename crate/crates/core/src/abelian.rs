//! Runtime-selected abelian groups and their elements.
//!
//! A [`GroupDescriptor`] names one of the supported groups (the integers,
//! a cyclic group `Z_k`, an elementary abelian group `Z_p^k`, or a finite
//! direct product of these). Elements carry their own shape, so two
//! elements can be checked for compatibility without consulting the
//! descriptor they came from. Residues are always stored in least
//! non-negative form, which makes structural equality coincide with group
//! equality.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic group order must be at least 2, got {0}")]
    CyclicOrder(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("vector group dimension must be positive")]
    ZeroDimension,
    #[error("product group needs at least one factor")]
    EmptyProduct,
    #[error("group mismatch: {left} vs {right}")]
    Mismatch {
        left: GroupDescriptor,
        right: GroupDescriptor,
    },
    #[error("malformed group descriptor: {0}")]
    BadDescriptor(String),
    #[error("malformed element of {group}: {reason}")]
    BadElement {
        group: GroupDescriptor,
        reason: String,
    },
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An abelian group chosen at runtime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// The integers under addition.
    Integers,
    /// `Z_k` for `k >= 2`.
    Cyclic(u64),
    /// `Z_p^k` for a prime `p` and `k >= 1`.
    Vector { p: u64, k: usize },
    /// A direct product of at least one factor.
    Product(Vec<GroupDescriptor>),
}

impl GroupDescriptor {
    pub fn cyclic(k: u64) -> Result<Self, GroupError> {
        let g = GroupDescriptor::Cyclic(k);
        g.validate()?;
        Ok(g)
    }

    pub fn vector(p: u64, k: usize) -> Result<Self, GroupError> {
        let g = GroupDescriptor::Vector { p, k };
        g.validate()?;
        Ok(g)
    }

    pub fn product(factors: Vec<GroupDescriptor>) -> Result<Self, GroupError> {
        let g = GroupDescriptor::Product(factors);
        g.validate()?;
        Ok(g)
    }

    /// Checks the structural invariants recursively.
    pub fn validate(&self) -> Result<(), GroupError> {
        match self {
            GroupDescriptor::Integers => Ok(()),
            GroupDescriptor::Cyclic(k) if *k < 2 => Err(GroupError::CyclicOrder(*k)),
            GroupDescriptor::Cyclic(_) => Ok(()),
            GroupDescriptor::Vector { p, .. } if !is_prime(*p) => Err(GroupError::NotPrime(*p)),
            GroupDescriptor::Vector { k: 0, .. } => Err(GroupError::ZeroDimension),
            GroupDescriptor::Vector { .. } => Ok(()),
            GroupDescriptor::Product(factors) if factors.is_empty() => Err(GroupError::EmptyProduct),
            GroupDescriptor::Product(factors) => factors.iter().try_for_each(|f| f.validate()),
        }
    }

    pub fn zero(&self) -> GroupElement {
        match self {
            GroupDescriptor::Integers => GroupElement::Integer(BigInt::zero()),
            GroupDescriptor::Cyclic(k) => GroupElement::Cyclic {
                modulus: *k,
                value: 0,
            },
            GroupDescriptor::Vector { p, k } => GroupElement::Vector {
                p: *p,
                coords: vec![0; *k],
            },
            GroupDescriptor::Product(factors) => {
                GroupElement::Tuple(factors.iter().map(|f| f.zero()).collect())
            }
        }
    }

    /// A fixed nonzero element: `1`, or the first unit vector, or the
    /// first factor's nonzero element padded with zeros.
    pub fn nonzero_element(&self) -> Option<GroupElement> {
        match self {
            GroupDescriptor::Integers => Some(GroupElement::Integer(BigInt::from(1))),
            GroupDescriptor::Cyclic(k) if *k >= 2 => Some(GroupElement::Cyclic {
                modulus: *k,
                value: 1,
            }),
            GroupDescriptor::Cyclic(_) => None,
            GroupDescriptor::Vector { p, k } if *k >= 1 => {
                let mut coords = vec![0; *k];
                coords[0] = 1 % p;
                Some(GroupElement::Vector { p: *p, coords })
            }
            GroupDescriptor::Vector { .. } => None,
            GroupDescriptor::Product(factors) => {
                let (pos, g) = factors
                    .iter()
                    .enumerate()
                    .find_map(|(i, f)| f.nonzero_element().map(|g| (i, g)))?;
                let mut parts: Vec<GroupElement> = factors.iter().map(|f| f.zero()).collect();
                parts[pos] = g;
                Some(GroupElement::Tuple(parts))
            }
        }
    }

    /// Builds a cyclic element, reducing `value` into `[0, k)`.
    pub fn residue(&self, value: i64) -> Result<GroupElement, GroupError> {
        match self {
            GroupDescriptor::Cyclic(k) => Ok(GroupElement::Cyclic {
                modulus: *k,
                value: reduce_i64(value, *k),
            }),
            GroupDescriptor::Integers => Ok(GroupElement::Integer(BigInt::from(value))),
            _ => Err(GroupError::BadElement {
                group: self.clone(),
                reason: "expected a scalar group".into(),
            }),
        }
    }

    /// Parses an element from the JSON label format: an integer for `Z`
    /// and `Z_k` (big integers may also be given as decimal strings), an
    /// array of integers for `Z_p^k`, and an array of factor values for a
    /// product. Residues are reduced into canonical range.
    pub fn parse_element(&self, value: &Value) -> Result<GroupElement, GroupError> {
        let bad = |reason: &str| GroupError::BadElement {
            group: self.clone(),
            reason: reason.to_string(),
        };
        match self {
            GroupDescriptor::Integers => match value {
                Value::Number(n) => n
                    .as_i64()
                    .map(|i| GroupElement::Integer(BigInt::from(i)))
                    .or_else(|| n.as_u64().map(|u| GroupElement::Integer(BigInt::from(u))))
                    .ok_or_else(|| bad("expected an integer")),
                Value::String(s) => s
                    .parse::<BigInt>()
                    .map(GroupElement::Integer)
                    .map_err(|_| bad("expected a decimal integer string")),
                _ => Err(bad("expected an integer")),
            },
            GroupDescriptor::Cyclic(k) => {
                let v = value.as_i64().ok_or_else(|| bad("expected an integer"))?;
                Ok(GroupElement::Cyclic {
                    modulus: *k,
                    value: reduce_i64(v, *k),
                })
            }
            GroupDescriptor::Vector { p, k } => {
                let items = value.as_array().ok_or_else(|| bad("expected an array"))?;
                if items.len() != *k {
                    return Err(bad(&format!("expected {k} coordinates, got {}", items.len())));
                }
                let coords = items
                    .iter()
                    .map(|c| c.as_i64().map(|c| reduce_i64(c, *p)))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| bad("coordinates must be integers"))?;
                Ok(GroupElement::Vector { p: *p, coords })
            }
            GroupDescriptor::Product(factors) => {
                let items = value.as_array().ok_or_else(|| bad("expected an array"))?;
                if items.len() != factors.len() {
                    return Err(bad(&format!(
                        "expected {} factor values, got {}",
                        factors.len(),
                        items.len()
                    )));
                }
                let parts = factors
                    .iter()
                    .zip(items)
                    .map(|(f, v)| f.parse_element(v))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(GroupElement::Tuple(parts))
            }
        }
    }

    /// Parses `{"group":"Z"}`, `{"group":"Zk","k":3}`,
    /// `{"group":"Zpk","p":2,"k":2}` or `{"group":"product","factors":[...]}`.
    pub fn from_json(value: &Value) -> Result<Self, GroupError> {
        let bad = |m: &str| GroupError::BadDescriptor(m.to_string());
        let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
        let tag = obj
            .get("group")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing string field \"group\""))?;
        let uint = |field: &str| {
            obj.get(field)
                .and_then(Value::as_u64)
                .ok_or_else(|| bad(&format!("missing non-negative integer field \"{field}\"")))
        };
        let g = match tag {
            "Z" => GroupDescriptor::Integers,
            "Zk" => GroupDescriptor::Cyclic(uint("k")?),
            "Zpk" => GroupDescriptor::Vector {
                p: uint("p")?,
                k: uint("k")? as usize,
            },
            "product" => {
                let factors = obj
                    .get("factors")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing array field \"factors\""))?;
                GroupDescriptor::Product(
                    factors
                        .iter()
                        .map(GroupDescriptor::from_json)
                        .collect::<Result<_, _>>()?,
                )
            }
            other => return Err(bad(&format!("unknown group \"{other}\""))),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupDescriptor::Integers => serde_json::json!({"group": "Z"}),
            GroupDescriptor::Cyclic(k) => serde_json::json!({"group": "Zk", "k": k}),
            GroupDescriptor::Vector { p, k } => serde_json::json!({"group": "Zpk", "p": p, "k": k}),
            GroupDescriptor::Product(factors) => serde_json::json!({
                "group": "product",
                "factors": factors.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
            }),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Integers => write!(f, "Z"),
            GroupDescriptor::Cyclic(k) => write!(f, "Z_{k}"),
            GroupDescriptor::Vector { p, k } => write!(f, "Z_{p}^{k}"),
            GroupDescriptor::Product(factors) => {
                for (i, g) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

fn reduce_i64(v: i64, m: u64) -> u64 {
    (v as i128).rem_euclid(m as i128) as u64
}

/// An element of one of the groups above.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Integer(BigInt),
    Cyclic { modulus: u64, value: u64 },
    Vector { p: u64, coords: Vec<u64> },
    Tuple(Vec<GroupElement>),
}

impl GroupElement {
    pub fn descriptor(&self) -> GroupDescriptor {
        match self {
            GroupElement::Integer(_) => GroupDescriptor::Integers,
            GroupElement::Cyclic { modulus, .. } => GroupDescriptor::Cyclic(*modulus),
            GroupElement::Vector { p, coords } => GroupDescriptor::Vector {
                p: *p,
                k: coords.len(),
            },
            GroupElement::Tuple(parts) => {
                GroupDescriptor::Product(parts.iter().map(|e| e.descriptor()).collect())
            }
        }
    }

    pub fn belongs_to(&self, group: &GroupDescriptor) -> bool {
        match (self, group) {
            (GroupElement::Integer(_), GroupDescriptor::Integers) => true,
            (GroupElement::Cyclic { modulus, value }, GroupDescriptor::Cyclic(k)) => {
                modulus == k && value < k
            }
            (GroupElement::Vector { p, coords }, GroupDescriptor::Vector { p: q, k }) => {
                p == q && coords.len() == *k && coords.iter().all(|c| c < p)
            }
            (GroupElement::Tuple(parts), GroupDescriptor::Product(factors)) => {
                parts.len() == factors.len()
                    && parts.iter().zip(factors).all(|(e, f)| e.belongs_to(f))
            }
            _ => false,
        }
    }

    fn mismatch(&self, other: &Self) -> GroupError {
        GroupError::Mismatch {
            left: self.descriptor(),
            right: other.descriptor(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    /// In-place addition; `self` is left untouched on mismatch.
    pub fn add_assign(&mut self, other: &Self) -> Result<(), GroupError> {
        if !self.same_shape(other) {
            return Err(self.mismatch(other));
        }
        self.add_assign_shaped(other);
        Ok(())
    }

    fn same_shape(&self, other: &Self) -> bool {
        match (self, other) {
            (GroupElement::Integer(_), GroupElement::Integer(_)) => true,
            (GroupElement::Cyclic { modulus: a, .. }, GroupElement::Cyclic { modulus: b, .. }) => {
                a == b
            }
            (GroupElement::Vector { p, coords }, GroupElement::Vector { p: q, coords: d }) => {
                p == q && coords.len() == d.len()
            }
            (GroupElement::Tuple(a), GroupElement::Tuple(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(y))
            }
            _ => false,
        }
    }

    fn add_assign_shaped(&mut self, other: &Self) {
        match (self, other) {
            (GroupElement::Integer(a), GroupElement::Integer(b)) => *a += b,
            (GroupElement::Cyclic { modulus, value }, GroupElement::Cyclic { value: b, .. }) => {
                *value = ((*value as u128 + *b as u128) % *modulus as u128) as u64;
            }
            (GroupElement::Vector { p, coords }, GroupElement::Vector { coords: d, .. }) => {
                for (c, x) in coords.iter_mut().zip(d) {
                    *c = ((*c as u128 + *x as u128) % *p as u128) as u64;
                }
            }
            (GroupElement::Tuple(a), GroupElement::Tuple(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    x.add_assign_shaped(y);
                }
            }
            _ => unreachable!("shapes checked by caller"),
        }
    }

    pub fn negate(&self) -> Self {
        match self {
            GroupElement::Integer(a) => GroupElement::Integer(-a),
            GroupElement::Cyclic { modulus, value } => GroupElement::Cyclic {
                modulus: *modulus,
                value: (modulus - value) % modulus,
            },
            GroupElement::Vector { p, coords } => GroupElement::Vector {
                p: *p,
                coords: coords.iter().map(|c| (p - c) % p).collect(),
            },
            GroupElement::Tuple(parts) => GroupElement::Tuple(parts.iter().map(|e| e.negate()).collect()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GroupElement::Integer(a) => a.is_zero(),
            GroupElement::Cyclic { value, .. } => *value == 0,
            GroupElement::Vector { coords, .. } => coords.iter().all(|&c| c == 0),
            GroupElement::Tuple(parts) => parts.iter().all(|e| e.is_zero()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupElement::Integer(a) => match a.to_i64() {
                Some(i) => Value::from(i),
                None => Value::String(a.to_string()),
            },
            GroupElement::Cyclic { value, .. } => Value::from(*value),
            GroupElement::Vector { coords, .. } => Value::from(coords.clone()),
            GroupElement::Tuple(parts) => Value::Array(parts.iter().map(|e| e.to_json()).collect()),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Integer(a) if a.is_negative() => write!(f, "({a})"),
            GroupElement::Integer(a) => write!(f, "{a}"),
            GroupElement::Cyclic { value, .. } => write!(f, "{value}"),
            GroupElement::Vector { coords, .. } => {
                let parts: Vec<String> = coords.iter().map(u64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Tuple(parts) => {
                let parts: Vec<String> = parts.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// Sums `elements` in `group`, starting from zero.
pub fn sum<'a, I>(group: &GroupDescriptor, elements: I) -> Result<GroupElement, GroupError>
where
    I: IntoIterator<Item = &'a GroupElement>,
{
    let mut acc = group.zero();
    for e in elements {
        acc.add_assign(e)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(v: i64) -> GroupElement {
        GroupElement::Integer(BigInt::from(v))
    }

    fn zk(k: u64, v: u64) -> GroupElement {
        GroupElement::Cyclic { modulus: k, value: v }
    }

    fn vec2(a: u64, b: u64) -> GroupElement {
        GroupElement::Vector {
            p: 2,
            coords: vec![a, b],
        }
    }

    #[test]
    fn add_examples() {
        assert_eq!(zk(3, 2).add(&zk(3, 2)).unwrap(), zk(3, 1));
        assert!(z(5).add(&z(-5)).unwrap().is_zero());
        assert_eq!(vec2(1, 0).add(&vec2(1, 1)).unwrap(), vec2(0, 1));
    }

    #[test]
    fn add_rejects_mismatch() {
        assert!(matches!(
            zk(3, 1).add(&zk(4, 1)),
            Err(GroupError::Mismatch { .. })
        ));
        assert!(z(1).add(&zk(2, 1)).is_err());
    }

    #[test]
    fn negate_examples() {
        assert_eq!(zk(4, 3).negate(), zk(4, 1));
        assert_eq!(z(0).negate(), z(0));
        assert_eq!(zk(2, 1).negate(), zk(2, 1));
    }

    #[test]
    fn is_zero_examples() {
        assert!(zk(3, 0).is_zero());
        assert!(!vec2(0, 1).is_zero());
        assert!(!z(-7).is_zero());
    }

    #[test]
    fn sum_examples() {
        let z3 = GroupDescriptor::Cyclic(3);
        let z2 = GroupDescriptor::Cyclic(2);
        let ones3 = vec![zk(3, 1); 3];
        let ones2 = vec![zk(2, 1); 3];
        assert!(sum(&z3, &ones3).unwrap().is_zero());
        assert_eq!(sum(&z2, &ones2).unwrap(), zk(2, 1));
        assert_eq!(sum(&GroupDescriptor::Integers, &[]).unwrap(), z(0));
        assert!(sum(&z3, &[zk(3, 1), zk(2, 1)]).is_err());
    }

    #[test]
    fn integer_sums_do_not_wrap() {
        let big = z(i64::MAX);
        let s = sum(&GroupDescriptor::Integers, &[big.clone(), big.clone(), big]).unwrap();
        assert_eq!(s, GroupElement::Integer(BigInt::from(i64::MAX) * 3));
        assert_eq!(s.to_json(), Value::String(s.to_string()));
    }

    #[test]
    fn descriptor_validation() {
        assert_eq!(GroupDescriptor::cyclic(1), Err(GroupError::CyclicOrder(1)));
        assert_eq!(GroupDescriptor::vector(4, 2), Err(GroupError::NotPrime(4)));
        assert_eq!(GroupDescriptor::vector(3, 0), Err(GroupError::ZeroDimension));
        assert_eq!(GroupDescriptor::product(vec![]), Err(GroupError::EmptyProduct));
        assert!(GroupDescriptor::product(vec![GroupDescriptor::Integers, GroupDescriptor::Cyclic(5)]).is_ok());
    }

    #[test]
    fn descriptor_json_formats() {
        let cases = [
            (r#"{"group":"Z"}"#, GroupDescriptor::Integers),
            (r#"{"group":"Zk","k":3}"#, GroupDescriptor::Cyclic(3)),
            (r#"{"group":"Zpk","p":2,"k":2}"#, GroupDescriptor::Vector { p: 2, k: 2 }),
            (
                r#"{"group":"product","factors":[{"group":"Z"},{"group":"Zk","k":4}]}"#,
                GroupDescriptor::Product(vec![GroupDescriptor::Integers, GroupDescriptor::Cyclic(4)]),
            ),
        ];
        for (text, expected) in cases {
            let v: Value = serde_json::from_str(text).unwrap();
            let g = GroupDescriptor::from_json(&v).unwrap();
            assert_eq!(g, expected);
            assert_eq!(GroupDescriptor::from_json(&g.to_json()).unwrap(), g);
        }
        let bad: Value = serde_json::from_str(r#"{"group":"Zk","k":1}"#).unwrap();
        assert!(GroupDescriptor::from_json(&bad).is_err());
        let bad: Value = serde_json::from_str(r#"{"group":"Q"}"#).unwrap();
        assert!(GroupDescriptor::from_json(&bad).is_err());
    }

    #[test]
    fn element_parsing_reduces_residues() {
        let g = GroupDescriptor::Cyclic(3);
        assert_eq!(g.parse_element(&Value::from(-1)).unwrap(), zk(3, 2));
        let v = GroupDescriptor::Vector { p: 2, k: 2 };
        assert_eq!(v.parse_element(&serde_json::json!([3, 0])).unwrap(), vec2(1, 0));
        assert!(v.parse_element(&serde_json::json!([1])).is_err());
        let prod = GroupDescriptor::Product(vec![GroupDescriptor::Integers, v.clone()]);
        let e = prod.parse_element(&serde_json::json!([-4, [1, 1]])).unwrap();
        assert_eq!(e, GroupElement::Tuple(vec![z(-4), vec2(1, 1)]));
        assert_eq!(prod.parse_element(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn nonzero_element_is_nonzero() {
        for g in [
            GroupDescriptor::Integers,
            GroupDescriptor::Cyclic(2),
            GroupDescriptor::Vector { p: 3, k: 2 },
            GroupDescriptor::Product(vec![GroupDescriptor::Cyclic(4), GroupDescriptor::Integers]),
        ] {
            let e = g.nonzero_element().unwrap();
            assert!(!e.is_zero());
            assert!(e.belongs_to(&g));
        }
    }

    fn group_strategy() -> impl Strategy<Value = GroupDescriptor> {
        let leaf = prop_oneof![
            Just(GroupDescriptor::Integers),
            (2u64..9).prop_map(GroupDescriptor::Cyclic),
            (prop::sample::select(vec![2u64, 3, 5]), 1usize..4)
                .prop_map(|(p, k)| GroupDescriptor::Vector { p, k }),
        ];
        leaf.prop_recursive(2, 6, 3, |inner| {
            prop::collection::vec(inner, 1..3).prop_map(GroupDescriptor::Product)
        })
    }

    fn element_in(g: &GroupDescriptor) -> BoxedStrategy<GroupElement> {
        match g {
            GroupDescriptor::Integers => (-1000i64..1000).prop_map(z).boxed(),
            GroupDescriptor::Cyclic(k) => {
                let k = *k;
                (0..k).prop_map(move |v| zk(k, v)).boxed()
            }
            GroupDescriptor::Vector { p, k } => {
                let p = *p;
                prop::collection::vec(0..p, *k)
                    .prop_map(move |coords| GroupElement::Vector { p, coords })
                    .boxed()
            }
            GroupDescriptor::Product(factors) => {
                let parts: Vec<_> = factors.iter().map(element_in).collect();
                parts.prop_map(GroupElement::Tuple).boxed()
            }
        }
    }

    fn triple() -> impl Strategy<Value = (GroupDescriptor, GroupElement, GroupElement, GroupElement)> {
        group_strategy().prop_flat_map(|g| {
            let e = element_in(&g);
            (Just(g), e.clone(), e.clone(), e)
        })
    }

    proptest! {
        #[test]
        fn group_laws((g, a, b, c) in triple()) {
            prop_assert!(a.belongs_to(&g));
            let ab_c = a.add(&b).unwrap().add(&c).unwrap();
            let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert!(a.add(&a.negate()).unwrap().is_zero());
            prop_assert_eq!(a.add(&g.zero()).unwrap(), a);
        }

        #[test]
        fn torsion_annihilates((g, a, _, _) in triple()) {
            let order = match &g {
                GroupDescriptor::Cyclic(k) => Some(*k as usize),
                GroupDescriptor::Vector { p, .. } => Some(*p as usize),
                _ => None,
            };
            if let Some(n) = order {
                let copies = vec![a; n];
                prop_assert!(sum(&g, &copies).unwrap().is_zero());
            }
        }
    }
}
