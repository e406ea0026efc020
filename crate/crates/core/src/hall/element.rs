use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::coeffring::{parse_rational, rational_to_string, Rational};
use crate::error::{Error, Result};
use crate::protoexact::{subobjects_of_dim, ClassKey, QuiverRep, RepCategory};

/// Finitely supported function on isomorphism classes of a truncated representation category.
#[derive(Clone, Debug)]
pub struct HallElement {
    category: Arc<RepCategory>,
    coeffs: BTreeMap<ClassKey, Rational>,
}

impl PartialEq for HallElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.category, &other.category) && self.coeffs == other.coeffs
    }
}

impl HallElement {
    pub fn zero(category: Arc<RepCategory>) -> Self {
        HallElement {
            category,
            coeffs: BTreeMap::new(),
        }
    }

    /// Indicator of the zero object, the unit of the Hall product.
    pub fn unit(category: Arc<RepCategory>) -> Self {
        let key = category.zero_class();
        HallElement::basis(category, key).expect("the zero class always exists")
    }

    /// Indicator function `1_A` of a class.
    pub fn basis(category: Arc<RepCategory>, key: ClassKey) -> Result<Self> {
        category.rep(&key)?;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(key, Rational::one());
        Ok(HallElement { category, coeffs })
    }

    /// Indicator of the class of `rep`.
    pub fn indicator(category: Arc<RepCategory>, rep: &QuiverRep) -> Result<Self> {
        let key = category.identify(rep)?;
        HallElement::basis(category, key)
    }

    pub fn from_coeffs(category: Arc<RepCategory>, coeffs: impl IntoIterator<Item = (ClassKey, Rational)>) -> Result<Self> {
        let mut out = HallElement::zero(category);
        for (k, v) in coeffs {
            out.category.rep(&k)?;
            out.add_term(k, v);
        }
        Ok(out)
    }

    fn add_term(&mut self, key: ClassKey, v: Rational) {
        let entry = self.coeffs.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += v;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn category(&self) -> &Arc<RepCategory> {
        &self.category
    }

    pub fn coeffs(&self) -> &BTreeMap<ClassKey, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, key: &ClassKey) -> Rational {
        self.coeffs.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Dimension vectors carrying a nonzero coefficient.
    pub fn support_dims(&self) -> BTreeSet<Vec<usize>> {
        self.coeffs.keys().map(|k| k.dim.clone()).collect()
    }

    fn check_context(&self, other: &HallElement) -> Result<()> {
        if !Arc::ptr_eq(&self.category, &other.category) {
            return Err(Error::validation("context", "Hall elements belong to different categories"));
        }
        Ok(())
    }

    pub fn add(&self, other: &HallElement) -> Result<HallElement> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> HallElement {
        let mut out = HallElement::zero(self.category.clone());
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// `(phi * psi)(E) = sum_{B <= E} phi(B) psi(E/B)`.
    pub fn product(&self, other: &HallElement) -> Result<HallElement> {
        self.check_context(other)?;
        let cat = &self.category;
        let left = self.support_dims();
        let right = other.support_dims();
        let mut out = HallElement::zero(cat.clone());
        let mut targets: BTreeMap<Vec<usize>, BTreeSet<Vec<usize>>> = BTreeMap::new();
        for a in &left {
            for b in &right {
                let g: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if g.iter().sum::<usize>() > cat.bound() {
                    return Err(Error::validation(
                        "product",
                        format!("result dimension {g:?} exceeds the category bound {}", cat.bound()),
                    ));
                }
                targets.entry(g).or_default().insert(a.clone());
            }
        }
        for (gamma, subdims) in targets {
            let table = cat.table(&gamma)?;
            for (index, e) in table.reps().iter().enumerate() {
                let mut value = Rational::zero();
                for beta in &subdims {
                    for s in subobjects_of_dim(e, beta, cat.budget())? {
                        let x = self.coeff(&cat.identify(&s.sub)?);
                        if x.is_zero() {
                            continue;
                        }
                        let y = other.coeff(&cat.identify(&s.quot)?);
                        value += x * y;
                    }
                }
                out.add_term(
                    ClassKey {
                        dim: gamma.clone(),
                        index,
                    },
                    value,
                );
            }
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> Value {
        let cat = &self.category;
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(k, v)| {
                json!({
                    "class": cat.rep(k).expect("stored keys are valid").to_json_value(),
                    "value": rational_to_string(v),
                })
            })
            .collect();
        json!({
            "context": {"quiver": cat.quiver().to_json_value(), "q": cat.q(), "bound": cat.bound()},
            "coeffs": coeffs,
        })
    }

    /// Reads the `coeffs` array; the context is given by `category`.
    pub fn from_json_value(category: Arc<RepCategory>, v: &Value) -> Result<Self> {
        let terms = v["coeffs"]
            .as_array()
            .ok_or_else(|| Error::validation("coeffs", "expected an array"))?;
        let mut out = HallElement::zero(category.clone());
        for t in terms {
            let rep = QuiverRep::from_json_value(category.quiver().clone(), t["class"].clone())?;
            if rep.q() != category.q() {
                return Err(Error::validation("class", "field size differs from the context"));
            }
            let value = match &t["value"] {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) if n.is_i64() => Rational::from_integer(n.as_i64().unwrap().into()),
                _ => return Err(Error::validation("value", "expected a rational string")),
            };
            out.add_term(category.identify(&rep)?, value);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::coeffring::rat;
    use crate::protoexact::Quiver;

    fn cat(q: Quiver, field: u32, bound: usize) -> Arc<RepCategory> {
        Arc::new(RepCategory::new(Arc::new(q), field, bound, Budget::default()).unwrap())
    }

    #[test]
    fn lines_in_the_plane() {
        let c = cat(Quiver::a1(), 2, 2);
        let one = HallElement::basis(c.clone(), ClassKey { dim: vec![1], index: 0 }).unwrap();
        let p = one.product(&one).unwrap();
        assert_eq!(p.coeff(&ClassKey { dim: vec![2], index: 0 }), rat(3, 1));
        assert_eq!(p.coeffs().len(), 1);
    }

    #[test]
    fn unit_is_two_sided() {
        let c = cat(Quiver::a2(), 3, 2);
        let u = HallElement::unit(c.clone());
        for k in c.classes() {
            let b = HallElement::basis(c.clone(), k).unwrap();
            assert_eq!(u.product(&b).unwrap(), b);
            assert_eq!(b.product(&u).unwrap(), b);
        }
    }

    #[test]
    fn a2_products_are_not_commutative() {
        let c = cat(Quiver::a2(), 2, 2);
        let q = c.quiver().clone();
        let s1 = HallElement::indicator(c.clone(), &QuiverRep::simple(q.clone(), 2, 0).unwrap()).unwrap();
        let s2 = HallElement::indicator(c.clone(), &QuiverRep::simple(q.clone(), 2, 1).unwrap()).unwrap();
        let split = c.identify(&QuiverRep::with_zero_maps(q.clone(), 2, vec![1, 1]).unwrap()).unwrap();
        let nonsplit = c
            .identify(&QuiverRep::from_json(q, r#"{"q":2,"dim":[1,1],"mats":[[[1]]]}"#).unwrap())
            .unwrap();
        let ab = s1.product(&s2).unwrap();
        let ba = s2.product(&s1).unwrap();
        assert_eq!(ab.coeff(&split), rat(1, 1));
        assert_eq!(ab.coeff(&nonsplit), rat(0, 1));
        assert_eq!(ba.coeff(&split), rat(1, 1));
        assert_eq!(ba.coeff(&nonsplit), rat(1, 1));
    }

    #[test]
    fn product_past_bound_is_rejected() {
        let c = cat(Quiver::a1(), 2, 1);
        let one = HallElement::basis(c.clone(), ClassKey { dim: vec![1], index: 0 }).unwrap();
        assert!(one.product(&one).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = cat(Quiver::a2(), 2, 2);
        let x = HallElement::from_coeffs(
            c.clone(),
            c.classes().into_iter().enumerate().map(|(i, k)| (k, rat(i as i64 + 1, 2))),
        )
        .unwrap();
        let back = HallElement::from_json_value(c, &x.to_json_value()).unwrap();
        assert_eq!(back, x);
    }
}
