use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ClassId, Element, EngineError, Page};

/// Products of class pairs, each as sparse coordinates in the target cell.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductTable {
    entries: BTreeMap<(ClassId, ClassId), Vec<(ClassId, BigInt)>>,
}

impl ProductTable {
    pub fn get(&self, a: ClassId, b: ClassId) -> Option<&[(ClassId, BigInt)]> {
        self.entries.get(&(a, b)).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(ClassId, ClassId), &Vec<(ClassId, BigInt)>)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Page {
    /// Product of two elements, computed on `E^2` representatives and read
    /// back in the target cell. `Ok(None)` when either factor or the target
    /// is outside the reliable window.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Option<Element>, EngineError> {
        let (Some(cx), Some(cy)) = (self.cell(x.s, x.t), self.cell(y.s, y.t)) else {
            return Ok(None);
        };
        if !cx.reliable || !cy.reliable {
            return Ok(None);
        }
        let p = self.presentation();
        let product = cx.element(&x.coords).mul(&cy.element(&y.coords), p);
        let (s, t) = (x.s + y.s, x.t + y.t);
        if s < -self.window.d {
            if product.is_zero() {
                return Ok(Some(Element {
                    s,
                    t,
                    coords: Vec::new(),
                }));
            }
            return Err(EngineError::ProductOutsideWindow { at: (s, t) });
        }
        let Some(target) = self.cell(s, t).filter(|c| c.reliable) else {
            return Ok(None);
        };
        let coords = target
            .class_of(&product)
            .ok_or(EngineError::ProductNotACycle { at: (s, t) })?;
        Ok(Some(Element { s, t, coords }))
    }

    pub fn multiply_classes(&self, a: ClassId, b: ClassId) -> Result<Option<Element>, EngineError> {
        match (self.element(a), self.element(b)) {
            (Some(x), Some(y)) => self.multiply(&x, &y),
            _ => Ok(None),
        }
    }

    /// Class of the unit monomial in the cell `(0, 0)`.
    pub fn unit_element(&self) -> Option<Element> {
        let cell = self.cell(0, 0)?;
        let unit = crate::algebra::Combination::monomial(self.presentation().unit());
        let coords = cell.class_of(&unit)?;
        Some(Element { s: 0, t: 0, coords })
    }
}

/// All products of class pairs whose target is computable. Zero products are
/// recorded with an empty coordinate list.
pub fn product_table(page: &Page) -> Result<ProductTable, EngineError> {
    let classes = page.classes();
    let mut entries = BTreeMap::new();
    for &a in &classes {
        for &b in &classes {
            let Some(prod) = page.multiply_classes(a, b)? else {
                continue;
            };
            let sparse = prod
                .coords
                .iter()
                .enumerate()
                .filter(|(_, k)| !k.is_zero())
                .map(|(index, k)| {
                    (
                        ClassId {
                            s: prod.s,
                            t: prod.t,
                            index,
                        },
                        k.clone(),
                    )
                })
                .collect();
            entries.insert((a, b), sparse);
        }
    }
    Ok(ProductTable { entries })
}
