//! Homomorphisms given by generator images, and isomorphism certificates.

use std::fmt;
use std::sync::Arc;

use crate::group::{Elem, FiniteGroup};
use crate::lattice::Subgroup;
use crate::pc::GroupElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomError {
    /// Names the first relation that fails under the images.
    RelationViolated(String),
    NotSurjective { image_order: usize },
    OrderMismatch { source: usize, target: usize },
}

impl fmt::Display for HomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomError::RelationViolated(r) => write!(f, "relation violated: {r}"),
            HomError::NotSurjective { image_order } => {
                write!(f, "not surjective (image of order {image_order})")
            }
            HomError::OrderMismatch { source, target } => {
                write!(f, "order mismatch: {source} vs {target}")
            }
        }
    }
}

impl std::error::Error for HomError {}

/// A map fixed by the images of the source's generators.
#[derive(Clone)]
pub struct Homomorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<Elem>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Homomorphism")
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .field("images", &self.images)
            .finish()
    }
}

impl Homomorphism {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<Elem>) -> Self {
        assert_eq!(images.len(), source.generators().len());
        Homomorphism { source, target, images }
    }

    /// Images given as words in the target's labels, keyed by source
    /// generator name.
    pub fn from_words(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        words: &[(&str, &str)],
    ) -> crate::Result<Self> {
        let mut images = Vec::with_capacity(source.generators().len());
        for name in source.generator_names() {
            let (_, w) = words
                .iter()
                .find(|(g, _)| g == name)
                .ok_or_else(|| crate::Error::Parse(format!("no image for generator {name}")))?;
            images.push(target.eval(w)?);
        }
        Ok(Homomorphism::new(source, target, images))
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn generator_images(&self) -> &[Elem] {
        &self.images
    }

    /// Checks the source's relations under the images. For a pc-backed
    /// source these are the power and commutator rules (von Dyck); otherwise
    /// every Cayley-graph edge is checked.
    pub fn check_relations(&self) -> Result<(), HomError> {
        if let Some(pres) = self.source.pc_presentation() {
            if self.source.generators().len() == pres.ngens() {
                let t = &self.target;
                let p = pres.prime();
                let n = pres.ngens();
                let word = |exps: &[u32]| {
                    exps.iter()
                        .zip(&self.images)
                        .fold(0, |acc, (&e, &img)| t.mul(acc, t.pow(img, e as i64)))
                };
                let names = pres.names();
                for i in 0..n {
                    if t.pow(self.images[i], p as i64) != word(pres.power_rule(i)) {
                        return Err(HomError::RelationViolated(format!(
                            "{}^{} = {}",
                            names[i],
                            p,
                            GroupElement { exponents: pres.power_rule(i).to_vec() }.format(names)
                        )));
                    }
                }
                for i in 0..n {
                    for j in i + 1..n {
                        let rule = pres.commutator_rule(j, i);
                        if t.comm(self.images[j], self.images[i]) != word(&rule) {
                            return Err(HomError::RelationViolated(format!(
                                "[{},{}] = {}",
                                names[j],
                                names[i],
                                GroupElement { exponents: rule }.format(names)
                            )));
                        }
                    }
                }
                return Ok(());
            }
        }
        self.extend().map(|_| ())
    }

    /// Image of every source element, or the first inconsistent edge.
    pub fn extend(&self) -> Result<Vec<Elem>, HomError> {
        let s = &self.source;
        let t = &self.target;
        let mut map = vec![usize::MAX; s.order()];
        map[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in s.generators().iter().enumerate() {
                let y = s.mul(x, g);
                let img = t.mul(map[x], self.images[k]);
                if map[y] == usize::MAX {
                    map[y] = img;
                    queue.push_back(y);
                } else if map[y] != img {
                    return Err(HomError::RelationViolated(format!(
                        "edge {} * {}",
                        s.format_element(x),
                        s.generator_names()[k]
                    )));
                }
            }
        }
        if map.contains(&usize::MAX) {
            // the listed generators do not generate the source
            return Err(HomError::RelationViolated("generators do not span source".into()));
        }
        Ok(map)
    }

    pub fn image(&self) -> Subgroup {
        self.target.subgroup(&self.images)
    }

    pub fn kernel(&self) -> Result<Subgroup, HomError> {
        let map = self.extend()?;
        let ker: Vec<Elem> = self.source.elements().filter(|&x| map[x] == 0).collect();
        Ok(self.source.subgroup(&ker))
    }

    /// Isomorphism certificate: relations hold, images generate the
    /// target, and the orders agree.
    pub fn verify_epimorphism(&self) -> Result<(), HomError> {
        self.check_relations()?;
        let image = self.image();
        if image.order() != self.target.order() {
            return Err(HomError::NotSurjective {
                image_order: image.order(),
            });
        }
        if self.source.order() != self.target.order() {
            return Err(HomError::OrderMismatch {
                source: self.source.order(),
                target: self.target.order(),
            });
        }
        Ok(())
    }
}

/// Exhaustive search for an isomorphism `source -> target`, assigning
/// generator images from the last pc generator back to the first so each
/// relation is tested as soon as its letters are fixed.
///
/// Returns `None` when no images satisfy the relations and generate the
/// target. Requires a pc-backed source.
pub fn find_isomorphism(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Option<Homomorphism> {
    let pres = source.pc_presentation()?;
    if source.order() != target.order() || source.prime() != target.prime() {
        return None;
    }
    let n = pres.ngens();
    let p = pres.prime() as i64;
    let t = target.clone();
    let gen_orders: Vec<usize> = source.generators().iter().map(|&g| source.element_order(g)).collect();
    let by_order: Vec<Vec<Elem>> = gen_orders
        .iter()
        .map(|&o| t.elements().filter(|&x| t.element_order(x) == o).collect())
        .collect();
    let mut images = vec![0usize; n];
    fn word(t: &FiniteGroup, images: &[Elem], exps: &[u32]) -> Elem {
        exps.iter()
            .zip(images)
            .fold(0, |acc, (&e, &img)| if e == 0 { acc } else { t.mul(acc, t.pow(img, e as i64)) })
    }
    fn go(
        i: usize,
        n: usize,
        p: i64,
        pres: &crate::pc::PcPresentation,
        t: &FiniteGroup,
        by_order: &[Vec<Elem>],
        images: &mut Vec<Elem>,
    ) -> bool {
        if i == 0 {
            return t.subgroup(images).order() == t.order();
        }
        let k = i - 1;
        for &cand in &by_order[k] {
            images[k] = cand;
            if t.pow(cand, p) != word(t, images, pres.power_rule(k)) {
                continue;
            }
            let ok = (k + 1..n).all(|j| t.comm(images[j], cand) == word(t, images, &pres.commutator_rule(j, k)));
            if ok && go(k, n, p, pres, t, by_order, images) {
                return true;
            }
        }
        false
    }
    if go(n, n, p, pres, &t, &by_order, &mut images) {
        Some(Homomorphism::new(source.clone(), target.clone(), images))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_pc_group, quotient_group};
    use crate::pc::PcPresentation;

    fn heis() -> Arc<FiniteGroup> {
        build_pc_group(PcPresentation::new(3, ["x", "y", "z"]).comm("y", "x", "z^2").unwrap()).unwrap()
    }

    #[test]
    fn identity_map_verifies() {
        let g = heis();
        let id = Homomorphism::new(g.clone(), g.clone(), g.generators().to_vec());
        assert_eq!(id.verify_epimorphism(), Ok(()));
    }

    #[test]
    fn swapped_images_violate_relation() {
        let g = heis();
        let x = g.label("x").unwrap();
        let y = g.label("y").unwrap();
        let z = g.label("z").unwrap();
        // x -> y, y -> x forces [y,x] -> [x,y] = z, not z^2
        let h = Homomorphism::new(g.clone(), g.clone(), vec![y, x, z]);
        assert!(matches!(h.verify_epimorphism(), Err(HomError::RelationViolated(_))));
        let h = Homomorphism::new(g.clone(), g.clone(), vec![y, x, g.inv(z)]);
        assert_eq!(h.verify_epimorphism(), Ok(()));
    }

    #[test]
    fn natural_map_kernel_and_order_mismatch() {
        let g = heis();
        let z = g.center().clone();
        let (q, map) = quotient_group(&g, &z).unwrap();
        assert_eq!(q.order(), 9);
        assert_eq!(map.kernel().unwrap().bits(), z.bits());
        assert_eq!(
            map.verify_epimorphism(),
            Err(HomError::OrderMismatch { source: 27, target: 9 })
        );
        // image * kernel = source
        assert_eq!(map.image().order() * map.kernel().unwrap().order(), g.order());
    }

    #[test]
    fn trivial_images_not_surjective() {
        let g = heis();
        let h = Homomorphism::new(g.clone(), g.clone(), vec![0, 0, 0]);
        assert!(matches!(h.verify_epimorphism(), Err(HomError::NotSurjective { image_order: 1 })));
    }

    #[test]
    fn search_finds_and_refutes() {
        let g = heis();
        assert!(find_isomorphism(&g, &g).is_some());
        let ab = build_pc_group(PcPresentation::new(3, ["a", "b", "c"])).unwrap();
        assert!(find_isomorphism(&g, &ab).is_none());
    }
}
