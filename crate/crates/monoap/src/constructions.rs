//! Built-in block colorings, star templates, the template product, and
//! tower colorings.
//!
//! A star template is a block over {0, 1, *}. The product `template ⋉ inner`
//! concatenates one template copy per element of the inner coloring and
//! fills the j-th copy's star with `inner(j)`. When no star fill admits a
//! non-degenerate monochromatic k-AP in the filled block, every
//! monochromatic k-AP of the product has a difference divisible by the
//! block length, which yields the exact count recursion
//! `count(template ⋉ inner) = (b-1) t^2 + count(inner)`.

use std::fmt;
use std::str::FromStr;

use crate::apcount::{count_mono_cyclic, ApFilter};
use crate::coloring::{Coloring, Group};
use crate::error::Error;

const B20_BITS: &str = "11101101110001001000";
const B22_BITS: &str = "1110110100011101001000";
const B74_BITS: &str = concat!(
    "1111011100001011001010100110100001110",
    "1111011100001011001000100110100001110"
);
const B11_TEMPLATE: &str = "11101*01000";
const B37_TEMPLATE: &str = "11110111000010110010*0100110100001110";

/// Names of the built-in block colorings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinColoring {
    B20,
    B22,
    B74,
}

/// Names of the built-in star templates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinTemplate {
    B11,
    B37,
}

/// The named block coloring, bit-exact.
pub fn builtin_coloring(name: BuiltinColoring) -> Coloring {
    let (text, n) = match name {
        BuiltinColoring::B20 => (B20_BITS, 20),
        BuiltinColoring::B22 => (B22_BITS, 22),
        BuiltinColoring::B74 => (B74_BITS, 74),
    };
    Coloring::parse(text, Group::Cyclic(n)).expect("built-in coloring is valid")
}

/// The named star template, bit-exact.
pub fn builtin_template(name: BuiltinTemplate) -> BlockTemplate {
    let text = match name {
        BuiltinTemplate::B11 => B11_TEMPLATE,
        BuiltinTemplate::B37 => B37_TEMPLATE,
    };
    BlockTemplate::parse(text).expect("built-in template is valid")
}

pub fn b20() -> Coloring {
    builtin_coloring(BuiltinColoring::B20)
}

pub fn b22() -> Coloring {
    builtin_coloring(BuiltinColoring::B22)
}

pub fn b74() -> Coloring {
    builtin_coloring(BuiltinColoring::B74)
}

pub fn b11_template() -> BlockTemplate {
    builtin_template(BuiltinTemplate::B11)
}

pub fn b37_template() -> BlockTemplate {
    builtin_template(BuiltinTemplate::B37)
}

impl FromStr for BuiltinColoring {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s.to_ascii_uppercase().as_str() {
            "B20" => Ok(BuiltinColoring::B20),
            "B22" => Ok(BuiltinColoring::B22),
            "B74" => Ok(BuiltinColoring::B74),
            _ => Err(()),
        }
    }
}

impl FromStr for BuiltinTemplate {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s.to_ascii_uppercase().as_str() {
            "B11" => Ok(BuiltinTemplate::B11),
            "B37" => Ok(BuiltinTemplate::B37),
            _ => Err(()),
        }
    }
}

/// One slot of a block template.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Fixed(u8),
    Star,
}

/// A block coloring over {0, 1, *}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTemplate {
    slots: Vec<Slot>,
}

impl BlockTemplate {
    pub fn new(slots: Vec<Slot>) -> BlockTemplate {
        BlockTemplate { slots }
    }

    /// Parses a template from text of 0/1/* digits; the separators accepted
    /// by coloring parsing are ignored here too.
    pub fn parse(text: &str) -> Result<BlockTemplate, Error> {
        let mut slots = Vec::new();
        for ch in text.chars() {
            match ch {
                '0' => slots.push(Slot::Fixed(0)),
                '1' => slots.push(Slot::Fixed(1)),
                '*' => slots.push(Slot::Star),
                ' ' | '\t' | '\n' | '\r' | ',' | '(' | ')' => {}
                other => return Err(Error::IllegalCharacter(other)),
            }
        }
        Ok(BlockTemplate { slots })
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn star_positions(&self) -> Vec<usize> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| matches!(s, Slot::Star).then_some(i))
            .collect()
    }

    /// The block with every star set to the given value.
    pub fn fill(&self, star_value: u8) -> Coloring {
        Coloring::from_fn(Group::Cyclic(self.len()), |i| match self.slots[i] {
            Slot::Fixed(b) => b,
            Slot::Star => star_value & 1,
        })
    }

    fn require_single_star(&self) -> Result<usize, Error> {
        let stars = self.star_positions();
        if stars.len() != 1 {
            return Err(Error::TemplateStars {
                expected: 1,
                got: stars.len(),
            });
        }
        Ok(stars[0])
    }
}

impl fmt::Display for BlockTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.slots {
            match s {
                Slot::Fixed(b) => write!(f, "{b}")?,
                Slot::Star => write!(f, "*")?,
            }
        }
        Ok(())
    }
}

/// The template product: `inner.n()` concatenated template copies with the
/// j-th copy's star replaced by `inner(j)`. The template must have exactly
/// one star and the inner coloring must be cyclic.
pub fn ltimes(template: &BlockTemplate, inner: &Coloring) -> Result<Coloring, Error> {
    template.require_single_star()?;
    let t = match inner.group() {
        Group::Cyclic(t) => t,
        Group::Interval(_) => return Err(Error::NotCyclic),
    };
    let b = template.len();
    let bits = (0..b * t)
        .map(|p| match template.slots[p % b] {
            Slot::Fixed(v) => v,
            Slot::Star => inner.bit(p / b),
        })
        .collect();
    Coloring::new(Group::Cyclic(b * t), bits)
}

/// True when neither star fill admits a non-degenerate monochromatic k-AP
/// in the filled block. This is the gate for the exact count recursion of
/// [`tower_predicted_count`].
pub fn check_template_star_property(template: &BlockTemplate, k: usize) -> Result<bool, Error> {
    template.require_single_star()?;
    for fill in [0u8, 1] {
        if count_mono_cyclic(&template.fill(fill), k, ApFilter::NonDegenerateOnly)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An iterated template product: `template ⋉ (template ⋉ (… ⋉ base))`,
/// applied `depth` times over the base coloring.
#[derive(Clone, Debug)]
pub struct TowerSpec {
    pub template: BlockTemplate,
    pub depth: usize,
    pub base: Coloring,
}

pub fn tower_coloring(spec: &TowerSpec) -> Result<Coloring, Error> {
    assert!(spec.depth >= 1, "tower depth must be at least 1");
    let mut c = spec.base.clone();
    for _ in 0..spec.depth {
        c = ltimes(&spec.template, &c)?;
    }
    Ok(c)
}

/// The k-AP count of the tower by the exact recursion
/// `count(b t) = (b-1) t^2 + count(t)` per level. Fails when the template
/// does not have the star property for this k; the value always equals the
/// directly enumerated count.
pub fn tower_predicted_count(spec: &TowerSpec, k: usize) -> Result<u64, Error> {
    if !check_template_star_property(&spec.template, k)? {
        return Err(Error::StarPropertyFailed);
    }
    let b = spec.template.len() as u64;
    let mut t = spec.base.n() as u64;
    let mut count = count_mono_cyclic(&spec.base, k, ApFilter::All)?;
    for _ in 0..spec.depth {
        count += (b - 1) * t * t;
        t *= b;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn builtins_have_the_documented_shapes() {
        assert_eq!(b20().n(), 20);
        assert_eq!(b22().n(), 22);
        assert_eq!(b74().n(), 74);
        assert_eq!(b11_template().len(), 11);
        assert_eq!(b11_template().star_positions(), vec![5]);
        assert_eq!(b37_template().len(), 37);
        assert_eq!(b37_template().star_positions(), vec![20]);
    }

    #[test]
    fn products_reproduce_the_larger_builtins() {
        let pair = Coloring::parse("10", Group::Cyclic(2)).unwrap();
        assert_eq!(ltimes(&b11_template(), &pair).unwrap(), b22());
        assert_eq!(ltimes(&b37_template(), &pair).unwrap(), b74());
    }

    #[test]
    fn star_properties_hold_for_builtin_templates() {
        assert!(check_template_star_property(&b11_template(), 4).unwrap());
        assert!(check_template_star_property(&b37_template(), 5).unwrap());
        // Flipping a fixed slot breaks the property.
        let mut slots = b11_template().slots().to_vec();
        slots[0] = Slot::Fixed(0);
        let mutated = BlockTemplate::new(slots);
        assert!(!check_template_star_property(&mutated, 4).unwrap());
    }

    #[test]
    fn single_block_product_counts_only_degenerate_progressions() {
        for fill in [0u8, 1] {
            let single = Coloring::new(Group::Cyclic(1), vec![fill]).unwrap();
            let c = ltimes(&b11_template(), &single).unwrap();
            assert_eq!(count_mono_cyclic(&c, 4, ApFilter::All).unwrap(), 11);
        }
    }

    #[test]
    fn product_recursion_is_exact_for_random_inner_colorings() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let template = b11_template();
        for _ in 0..30 {
            let t = rng.gen_range(1..=14);
            let inner = Coloring::from_fn(Group::Cyclic(t), |_| rng.gen_range(0..=1));
            let product = ltimes(&template, &inner).unwrap();
            let direct = count_mono_cyclic(&product, 4, ApFilter::All).unwrap();
            let inner_count = count_mono_cyclic(&inner, 4, ApFilter::All).unwrap();
            assert_eq!(direct, 10 * (t * t) as u64 + inner_count);
        }
    }

    #[test]
    fn tower_counts_match_direct_enumeration() {
        let one = Coloring::new(Group::Cyclic(1), vec![1]).unwrap();
        let spec = TowerSpec {
            template: b11_template(),
            depth: 1,
            base: one.clone(),
        };
        assert_eq!(tower_predicted_count(&spec, 4).unwrap(), 11);

        let spec2 = TowerSpec {
            template: b11_template(),
            depth: 2,
            base: one.clone(),
        };
        let predicted = tower_predicted_count(&spec2, 4).unwrap();
        assert_eq!(predicted, 1221);
        let direct =
            count_mono_cyclic(&tower_coloring(&spec2).unwrap(), 4, ApFilter::All).unwrap();
        assert_eq!(direct, predicted);

        let spec37 = TowerSpec {
            template: b37_template(),
            depth: 1,
            base: one,
        };
        assert_eq!(tower_predicted_count(&spec37, 5).unwrap(), 37);
        let direct37 =
            count_mono_cyclic(&tower_coloring(&spec37).unwrap(), 5, ApFilter::All).unwrap();
        assert_eq!(direct37, 37);
    }

    #[test]
    fn tower_requires_the_star_property() {
        let mut slots = b11_template().slots().to_vec();
        slots[0] = Slot::Fixed(0);
        let spec = TowerSpec {
            template: BlockTemplate::new(slots),
            depth: 1,
            base: Coloring::new(Group::Cyclic(1), vec![1]).unwrap(),
        };
        assert!(matches!(
            tower_predicted_count(&spec, 4),
            Err(Error::StarPropertyFailed)
        ));
    }
}
