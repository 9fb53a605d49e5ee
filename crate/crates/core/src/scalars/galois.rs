//! Field automorphisms given by generator-image tables.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, FieldNode, Scalar};
use super::FieldError;

/// Automorphism of a tower determined by images of its generators. Generators
/// missing from the table are fixed. Composition follows the right-action
/// convention `k^(st) = (k^s)^t`.
#[derive(Clone, PartialEq, Eq)]
pub struct Automorphism {
    field: Field,
    images: BTreeMap<String, Scalar>,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .map(|(k, v)| format!("{k} -> {v}"))
            .collect();
        write!(f, "Automorphism[{}]", parts.join(", "))
    }
}

impl Automorphism {
    pub fn identity(field: &Field) -> Automorphism {
        Automorphism {
            field: field.clone(),
            images: BTreeMap::new(),
        }
    }

    /// Builds and validates: each algebraic generator must go to a root of
    /// the transported modulus, and every image must be nonzero.
    pub fn new(field: &Field, table: &[(&str, Scalar)]) -> Result<Automorphism, FieldError> {
        let names = field.generator_names();
        let mut images = BTreeMap::new();
        for (name, img) in table {
            if !names.iter().any(|n| n == name) {
                return Err(FieldError::UnknownGenerator(name.to_string()));
            }
            let img = field.coerce(img)?;
            if img.is_zero() {
                return Err(FieldError::InvalidAutomorphism(format!("{name} maps to zero")));
            }
            let own = field.generator(name).expect("declared generator");
            if img != own {
                images.insert(name.to_string(), img);
            }
        }
        let sigma = Automorphism {
            field: field.clone(),
            images,
        };
        sigma.validate()?;
        Ok(sigma)
    }

    fn validate(&self) -> Result<(), FieldError> {
        let mut level = Some(self.field.clone());
        while let Some(l) = level {
            if let FieldNode::Algebraic(al) = &*l.0 {
                let base = &al.base;
                let img = self.apply(&self.field.coerce(&l.level_generator())?)?;
                let mut acc = self.field.zero();
                for c in al.modulus.iter().rev() {
                    let c = self.field.coerce(&Scalar::new(base.clone(), c.clone()))?;
                    acc = &(&acc * &img) + &self.apply(&c)?;
                }
                if !acc.is_zero() {
                    return Err(FieldError::InvalidAutomorphism(format!(
                        "image {img} of {} is not a root of the transported minimal polynomial",
                        al.name
                    )));
                }
            }
            level = l.base();
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn image_of(&self, name: &str) -> Option<Scalar> {
        self.images
            .get(name)
            .cloned()
            .or_else(|| self.field.generator(name))
    }

    pub fn is_identity(&self) -> bool {
        self.images.is_empty()
    }

    /// `k^sigma`.
    pub fn apply(&self, k: &Scalar) -> Result<Scalar, FieldError> {
        if self.images.is_empty() {
            return self.field.coerce(k);
        }
        let k = self.field.coerce(k)?;
        self.field
            .substitute(&k, &self.field, &|g: &str| self.images.get(g).cloned())
    }

    /// The automorphism `k -> (k^self)^then`.
    pub fn then(&self, then: &Automorphism) -> Result<Automorphism, FieldError> {
        let mut images = BTreeMap::new();
        for name in self.field.generator_names() {
            let g = self.field.generator(&name).expect("declared");
            let img = then.apply(&self.apply(&g)?)?;
            if img != g {
                images.insert(name, img);
            }
        }
        Ok(Automorphism {
            field: self.field.clone(),
            images,
        })
    }

    /// Checks `(k^*)^sigma = (k^sigma)^*` on every tower generator.
    pub fn commutes_with_involution(&self) -> Result<bool, FieldError> {
        for name in self.field.generator_names() {
            let g = self.field.generator(&name).expect("declared");
            if self.apply(&g.conj())? != self.apply(&g)?.conj() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn table(&self) -> Vec<(String, String)> {
        self.images
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect()
    }
}
