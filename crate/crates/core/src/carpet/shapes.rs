use std::collections::HashMap;

use num_integer::Integer;

use super::CarpetGluing;
use crate::prototiles::{PrototileError, TurtlePolygon};

/// Every prototile promoted to one common field, in both chiralities on demand.
#[derive(Debug, Clone)]
pub struct Shapes {
    order: u32,
    plain: Vec<TurtlePolygon>,
    mirrored: HashMap<usize, TurtlePolygon>,
}

impl Shapes {
    pub fn new(prototiles: &[TurtlePolygon], reflected: impl IntoIterator<Item = usize>) -> Result<Shapes, PrototileError> {
        let order = prototiles.iter().fold(4u32, |acc, p| acc.lcm(&p.order()));
        let plain = prototiles.iter().map(|p| p.promote(order)).collect::<Result<Vec<_>, _>>()?;
        let mut mirrored = HashMap::new();
        for i in reflected {
            if i < plain.len() && !mirrored.contains_key(&i) {
                mirrored.insert(i, plain[i].reflected()?);
            }
        }
        Ok(Shapes { order, plain, mirrored })
    }

    pub fn for_gluing(g: &CarpetGluing) -> Result<Shapes, PrototileError> {
        Shapes::new(&g.prototiles, g.tiles.iter().filter(|t| t.reflected).map(|t| t.prototile))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn count(&self) -> usize {
        self.plain.len()
    }

    pub fn get(&self, prototile: usize, reflected: bool) -> &TurtlePolygon {
        if reflected {
            &self.mirrored[&prototile]
        } else {
            &self.plain[prototile]
        }
    }

    /// Like [`Shapes::get`] but builds the mirror image if it is missing.
    pub fn ensure(&mut self, prototile: usize, reflected: bool) -> Result<&TurtlePolygon, PrototileError> {
        if reflected && !self.mirrored.contains_key(&prototile) {
            let m = self.plain[prototile].reflected()?;
            self.mirrored.insert(prototile, m);
        }
        Ok(self.get(prototile, reflected))
    }
}
