use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::coeffring::{MotivicScalar, Rational};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// Function on the conjugacy classes of a finite group with values rational functions in `t`.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<MotivicScalar>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<MotivicScalar>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(Error::validation(
                "values",
                format!("expected {} class values, got {}", group.num_classes(), values.len()),
            ));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn from_integers(group: Arc<FiniteGroup>, values: &[i64]) -> Result<Self> {
        ClassFunction::new(group, values.iter().map(|&v| MotivicScalar::from_int(v)).collect())
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.num_classes();
        ClassFunction {
            group,
            values: vec![MotivicScalar::zero(); n],
        }
    }

    pub fn constant(group: Arc<FiniteGroup>, c: MotivicScalar) -> Self {
        let n = group.num_classes();
        ClassFunction {
            group,
            values: vec![c; n],
        }
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        ClassFunction::constant(group, MotivicScalar::one())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[MotivicScalar] {
        &self.values
    }

    pub fn value_at_class(&self, c: usize) -> &MotivicScalar {
        &self.values[c]
    }

    pub fn value_at(&self, g: usize) -> &MotivicScalar {
        &self.values[self.group.class_of(g)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn check_same_group(&self, other: &ClassFunction) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &other.group) && *self.group != *other.group {
            return Err(Error::validation("group", "class functions live on different groups"));
        }
        Ok(())
    }

    fn zip_with(&self, other: &ClassFunction, op: impl Fn(&MotivicScalar, &MotivicScalar) -> MotivicScalar) -> Result<Self> {
        self.check_same_group(other)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    /// Pointwise product (tensor product of virtual characters).
    pub fn mul(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a.mul(b))
    }

    pub fn scale(&self, c: &MotivicScalar) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.mul(c)).collect(),
        }
    }

    /// Restriction along `H <= G`.
    pub fn restrict(&self, h: &Subgroup) -> Result<ClassFunction> {
        if !Arc::ptr_eq(&self.group, &h.ambient) && *self.group != *h.ambient {
            return Err(Error::validation("group", "subgroup is not contained in the class function's group"));
        }
        let values = h
            .group
            .classes()
            .iter()
            .map(|c| self.value_at(h.embed[c[0]]).clone())
            .collect();
        ClassFunction::new(h.group.clone(), values)
    }

    /// Induction from `H` to `G`: `(Ind f)(g) = sum_{x in G/H, x^{-1} g x in H} f(x^{-1} g x)`.
    pub fn induce(&self, h: &Subgroup) -> Result<ClassFunction> {
        if !Arc::ptr_eq(&self.group, &h.group) && *self.group != *h.group {
            return Err(Error::validation("group", "class function does not live on the subgroup"));
        }
        let g = &h.ambient;
        let transversal = h.left_transversal();
        let values = g
            .classes()
            .iter()
            .map(|c| {
                let rep = c[0];
                let mut acc = MotivicScalar::zero();
                for &x in &transversal {
                    let y = g.mul(g.inv(x), g.mul(rep, x));
                    if let Some(k) = h.locate(y) {
                        acc = acc.add(self.value_at(k));
                    }
                }
                acc
            })
            .collect();
        ClassFunction::new(g.clone(), values)
    }

    /// Pullback along a surjective homomorphism `pi: G -> self.group` given elementwise.
    pub fn inflate(&self, g: Arc<FiniteGroup>, pi: &[usize]) -> Result<ClassFunction> {
        if pi.len() != g.order() || pi.iter().any(|&x| x >= self.group.order()) {
            return Err(Error::validation("projection", "wrong size or range"));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if pi[g.mul(a, b)] != self.group.mul(pi[a], pi[b]) {
                    return Err(Error::validation("projection", "not a homomorphism"));
                }
            }
        }
        let values = g.classes().iter().map(|c| self.value_at(pi[c[0]]).clone()).collect();
        ClassFunction::new(g, values)
    }

    /// `(f x g)(a, b) = f(a) g(b)` on the direct product.
    pub fn external_product(&self, other: &ClassFunction) -> ClassFunction {
        let product = Arc::new(FiniteGroup::direct_product(&self.group, &other.group));
        self.external_product_on(other, product)
    }

    /// Same as [`ClassFunction::external_product`] with a prebuilt product group.
    pub fn external_product_on(&self, other: &ClassFunction, product: Arc<FiniteGroup>) -> ClassFunction {
        let nb = other.group.order();
        let values = product
            .classes()
            .iter()
            .map(|c| self.value_at(c[0] / nb).mul(other.value_at(c[0] % nb)))
            .collect();
        ClassFunction {
            group: product,
            values,
        }
    }

    /// `|G| <f, g> = sum_c |c| f(c) g(c^{-1})`.
    pub fn scaled_inner_product(&self, other: &ClassFunction) -> Result<MotivicScalar> {
        self.check_same_group(other)?;
        let mut acc = MotivicScalar::zero();
        for c in 0..self.group.num_classes() {
            let w = MotivicScalar::from_int(self.group.class_size(c) as i64);
            let term = self.values[c].mul(&other.values[self.group.inverse_class(c)]);
            acc = acc.add(&term.mul(&w));
        }
        Ok(acc)
    }

    /// `<f, g>` after substituting `t = t0`.
    pub fn inner_product_at(&self, other: &ClassFunction, t0: &Rational) -> Result<Rational> {
        let s = self.scaled_inner_product(other)?.evaluate_at(t0)?;
        Ok(s / Rational::from_integer(BigInt::from(self.group.order())))
    }

    pub fn to_json_value(&self) -> Value {
        let values: Vec<Value> = self
            .values
            .iter()
            .map(|v| serde_json::to_value(v).expect("serializable"))
            .collect();
        let display: Vec<String> = self.values.iter().map(|v| v.to_string_var("t")).collect();
        json!({
            "group": self.group.name(),
            "classes": self.group.class_labels(),
            "values": values,
            "display": display,
        })
    }

    /// Reads values for a known group; class labels must match.
    pub fn from_json_value(group: Arc<FiniteGroup>, v: &Value) -> Result<Self> {
        if let Some(labels) = v.get("classes") {
            let labels: Vec<String> =
                serde_json::from_value(labels.clone()).map_err(|e| Error::validation("classes", e.to_string()))?;
            if labels != group.class_labels() {
                return Err(Error::validation("classes", "class labels do not match the group"));
            }
        }
        let values: Vec<MotivicScalar> =
            serde_json::from_value(v["values"].clone()).map_err(|e| Error::validation("values", e.to_string()))?;
        ClassFunction::new(group, values)
    }
}

/// Value at the identity with `t = t0`.
pub fn dimension_at(f: &ClassFunction, t0: &Rational) -> Result<Rational> {
    f.value_at_class(f.group().identity_class()).evaluate_at(t0)
}

/// Checks `<Ind f, chi>_G = <f, Res chi>_H` exactly, in the scaled form
/// `|H| sum_G = |G| sum_H`.
pub fn frobenius_reciprocity_holds(f: &ClassFunction, chi: &ClassFunction, h: &Subgroup) -> Result<bool> {
    let left = f.induce(h)?.scaled_inner_product(chi)?;
    let right = f.scaled_inner_product(&chi.restrict(h)?)?;
    let lh = left.mul(&MotivicScalar::from_int(h.group.order() as i64));
    let rg = right.mul(&MotivicScalar::from_int(h.ambient.order() as i64));
    Ok(lh == rg)
}
