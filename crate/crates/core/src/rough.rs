//! Finite approximation spaces: a universe partitioned into indiscernibility
//! blocks, with lower/upper approximations of element sets and of relations.
//!
//! Elements are addressed by their position in the universe's declaration
//! order. Every set returned here is sorted in that order, so output is
//! deterministic.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Position of an element in its universe.
pub type Elem = usize;

/// An ordered list of distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    symbols: Vec<String>,
    index: HashMap<String, Elem>,
}

impl Universe {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Universe { symbols, index })
    }

    /// `a, b, c, ...` for `n <= 26`, then `e26, e27, ...`.
    pub fn letters(n: usize) -> Result<Self> {
        Universe::new((0..n).map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        }))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, e: Elem) -> &str {
        &self.symbols[e]
    }

    pub fn elem(&self, symbol: &str) -> Result<Elem> {
        self.index
            .get(symbol)
            .copied()
            .ok_or_else(|| Error::UnknownElement(symbol.to_string()))
    }

    pub fn subset<S: AsRef<str>>(&self, symbols: &[S]) -> Result<ElemSet> {
        symbols
            .iter()
            .map(|s| self.elem(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(ElemSet::from_elems)
    }

    pub fn full(&self) -> ElemSet {
        ElemSet((0..self.len()).collect())
    }

    pub fn show_set(&self, set: &ElemSet) -> String {
        let names: Vec<&str> = set.iter().map(|e| self.symbol(e)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn show_pair(&self, (x, y): (Elem, Elem)) -> String {
        format!("({},{})", self.symbol(x), self.symbol(y))
    }

    fn check(&self, e: Elem) -> Result<Elem> {
        if e < self.len() {
            Ok(e)
        } else {
            Err(Error::UnknownElement(format!("#{e}")))
        }
    }
}

/// A set of elements, sorted in universe order without duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(Vec<Elem>);

impl ElemSet {
    pub fn empty() -> Self {
        ElemSet(Vec::new())
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(elems: I) -> Self {
        let mut v: Vec<Elem> = elems.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ElemSet(v)
    }

    /// Members of `0..n` whose bit is set in `mask`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        ElemSet((0..n).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.0
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    pub fn intersects(&self, other: &ElemSet) -> bool {
        self.iter().any(|e| other.contains(e))
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        ElemSet(self.iter().filter(|&e| !other.contains(e)).collect())
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        ElemSet::from_elems(self.iter().chain(other.iter()))
    }

    /// Cartesian square `self × self`.
    pub fn square(&self) -> PairSet {
        self.product(self)
    }

    pub fn product(&self, other: &ElemSet) -> PairSet {
        PairSet(
            self.iter()
                .flat_map(|x| other.iter().map(move |y| (x, y)))
                .collect(),
        )
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        ElemSet::from_elems(iter)
    }
}

/// A set of ordered pairs, sorted row-major in universe order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PairSet(Vec<(Elem, Elem)>);

impl PairSet {
    pub fn from_pairs<I: IntoIterator<Item = (Elem, Elem)>>(pairs: I) -> Self {
        let mut v: Vec<_> = pairs.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        PairSet(v)
    }

    pub fn contains(&self, p: (Elem, Elem)) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    pub fn intersects(&self, other: &PairSet) -> bool {
        self.iter().any(|p| other.contains(p))
    }

    pub fn difference(&self, other: &PairSet) -> PairSet {
        PairSet(self.iter().filter(|&p| !other.contains(p)).collect())
    }
}

/// Lower and upper approximation of a subset, with the boundary between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub lower: ElemSet,
    pub upper: ElemSet,
    pub boundary: ElemSet,
}

impl ApproxResult {
    pub fn is_rough(&self) -> bool {
        !self.boundary.is_empty()
    }
}

/// Lower/upper approximation of a relation under the product partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationApprox {
    pub lower: PairSet,
    pub upper: PairSet,
}

/// The three rectangle regions of `X × X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectRegions {
    pub lower: PairSet,
    pub upper: PairSet,
    pub boundary: PairSet,
}

/// Where a pair sits relative to the rectangle regions of `X × X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Inside `lower(X) × lower(X)`.
    Lower,
    /// Inside `upper(X) × upper(X)` but not the lower rectangle.
    Boundary,
    /// Outside `upper(X) × upper(X)`.
    Outside,
}

/// A finite universe together with the partition induced by an equivalence relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationSpace {
    universe: Arc<Universe>,
    blocks: Vec<ElemSet>,
    block_of: Vec<usize>,
}

impl ApproximationSpace {
    /// Validates `blocks` as a partition of `universe`.
    ///
    /// Blocks are normalised: members in universe order, blocks ordered by
    /// their first member.
    pub fn new<B, S>(universe: impl Into<Arc<Universe>>, blocks: &[B]) -> Result<Self>
    where
        B: AsRef<[S]>,
        S: AsRef<str>,
    {
        let universe = universe.into();
        let mut owner: Vec<Option<usize>> = vec![None; universe.len()];
        let mut sets = Vec::with_capacity(blocks.len());
        for block in blocks {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            let mut members = Vec::with_capacity(block.len());
            for sym in block {
                let e = universe.elem(sym.as_ref())?;
                if owner[e].is_some() || members.contains(&e) {
                    return Err(Error::Overlap(sym.as_ref().to_string()));
                }
                members.push(e);
            }
            for &e in &members {
                owner[e] = Some(0);
            }
            sets.push(ElemSet::from_elems(members));
        }
        if let Some(e) = owner.iter().position(Option::is_none) {
            return Err(Error::Coverage(universe.symbol(e).to_string()));
        }
        Ok(Self::from_normalised(universe, sets))
    }

    /// Builds a space from a block label per element (restricted growth form or any labelling).
    pub fn from_labels(universe: Arc<Universe>, labels: &[usize]) -> Result<Self> {
        if labels.len() != universe.len() {
            return Err(Error::Bounds(
                "labels",
                format!("{} labels for {} elements", labels.len(), universe.len()),
            ));
        }
        let mut order: Vec<usize> = Vec::new();
        let mut groups: Vec<Vec<Elem>> = Vec::new();
        for (e, &label) in labels.iter().enumerate() {
            match order.iter().position(|&l| l == label) {
                Some(i) => groups[i].push(e),
                None => {
                    order.push(label);
                    groups.push(vec![e]);
                }
            }
        }
        let sets = groups.into_iter().map(ElemSet::from_elems).collect();
        Ok(Self::from_normalised(universe, sets))
    }

    fn from_normalised(universe: Arc<Universe>, mut blocks: Vec<ElemSet>) -> Self {
        blocks.sort_by_key(|b| b.as_slice()[0]);
        let mut block_of = vec![0; universe.len()];
        for (i, b) in blocks.iter().enumerate() {
            for e in b.iter() {
                block_of[e] = i;
            }
        }
        ApproximationSpace {
            universe,
            blocks,
            block_of,
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn blocks(&self) -> &[ElemSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    /// The block containing `x`.
    pub fn eq_class(&self, x: &str) -> Result<&ElemSet> {
        let e = self.universe.elem(x)?;
        Ok(self.class_of(e))
    }

    pub fn class_of(&self, e: Elem) -> &ElemSet {
        &self.blocks[self.block_of[e]]
    }

    fn check_subset(&self, x: &ElemSet) -> Result<()> {
        for e in x.iter() {
            self.universe.check(e)?;
        }
        Ok(())
    }

    pub fn approx_set(&self, x: &ElemSet) -> Result<ApproxResult> {
        self.check_subset(x)?;
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for block in &self.blocks {
            if block.is_subset(x) {
                lower.extend(block.iter());
            }
            if block.intersects(x) {
                upper.extend(block.iter());
            }
        }
        let lower = ElemSet::from_elems(lower);
        let upper = ElemSet::from_elems(upper);
        let boundary = upper.difference(&lower);
        Ok(ApproxResult {
            lower,
            upper,
            boundary,
        })
    }

    pub fn is_rough(&self, x: &ElemSet) -> Result<bool> {
        Ok(self.approx_set(x)?.is_rough())
    }

    /// `[x]_R × [y]_R`, the class of `(x, y)` in the product partition of `U × U`.
    pub fn product_class(&self, x: &str, y: &str) -> Result<PairSet> {
        let (x, y) = (self.universe.elem(x)?, self.universe.elem(y)?);
        Ok(self.product_class_of(x, y))
    }

    pub fn product_class_of(&self, x: Elem, y: Elem) -> PairSet {
        self.class_of(x).product(self.class_of(y))
    }

    /// Lower/upper approximation of a relation `T ⊆ U × U`, evaluated class by class.
    pub fn approx_relation(&self, t: &PairSet) -> Result<RelationApprox> {
        for (x, y) in t.iter() {
            self.universe.check(x)?;
            self.universe.check(y)?;
        }
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for bx in &self.blocks {
            for by in &self.blocks {
                let class = bx.product(by);
                if class.is_subset(t) {
                    lower.extend(class.iter());
                }
                if class.intersects(t) {
                    upper.extend(class.iter());
                }
            }
        }
        Ok(RelationApprox {
            lower: PairSet::from_pairs(lower),
            upper: PairSet::from_pairs(upper),
        })
    }

    /// Rectangle regions of `X × X`, computed from the one-dimensional approximations.
    pub fn rect_regions(&self, x: &ElemSet) -> Result<RectRegions> {
        let approx = self.approx_set(x)?;
        let lower = approx.lower.square();
        let upper = approx.upper.square();
        let boundary = upper.difference(&lower);
        Ok(RectRegions {
            lower,
            upper,
            boundary,
        })
    }

    /// Row-major region labels for every pair of `U × U`.
    pub fn region_map(&self, approx: &ApproxResult) -> Vec<Region> {
        let n = self.len();
        let mut map = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let region = if approx.lower.contains(x) && approx.lower.contains(y) {
                    Region::Lower
                } else if approx.upper.contains(x) && approx.upper.contains(y) {
                    Region::Boundary
                } else {
                    Region::Outside
                };
                map.push(region);
            }
        }
        map
    }
}

impl fmt::Display for ApproximationSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(|b| self.universe.show_set(b)).collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> ApproximationSpace {
        let u = Universe::new(["a", "b", "c", "d"]).unwrap();
        ApproximationSpace::new(u, &[vec!["a", "b"], vec!["c", "d"]]).unwrap()
    }

    fn set(space: &ApproximationSpace, s: &[&str]) -> ElemSet {
        space.universe().subset(s).unwrap()
    }

    #[test]
    fn constructor_errors() {
        let u = Universe::new(["a", "b"]).unwrap();
        assert_eq!(
            ApproximationSpace::new(u.clone(), &[vec!["a", "b"], vec!["b"]]),
            Err(Error::Overlap("b".into()))
        );
        assert_eq!(
            ApproximationSpace::new(u.clone(), &[vec!["a"]]),
            Err(Error::Coverage("b".into()))
        );
        assert_eq!(
            ApproximationSpace::new(u.clone(), &[vec!["a", "z"]]),
            Err(Error::UnknownElement("z".into()))
        );
        assert_eq!(
            ApproximationSpace::new(u, &[vec!["a", "a", "b"]]),
            Err(Error::Overlap("a".into()))
        );
        assert_eq!(Universe::new(Vec::<String>::new()), Err(Error::EmptyUniverse));
        assert_eq!(Universe::new(["a", "a"]), Err(Error::DuplicateSymbol("a".into())));
    }

    #[test]
    fn singleton_space() {
        let u = Universe::new(["a"]).unwrap();
        let s = ApproximationSpace::new(u, &[vec!["a"]]).unwrap();
        assert_eq!(s.eq_class("a").unwrap(), &ElemSet::from_elems([0]));
        assert_eq!(s.product_class("a", "a").unwrap(), PairSet::from_pairs([(0, 0)]));
    }

    #[test]
    fn eq_classes() {
        let s = e1();
        assert_eq!(s.eq_class("a").unwrap(), &set(&s, &["a", "b"]));
        assert_eq!(s.eq_class("c").unwrap(), &set(&s, &["c", "d"]));
        assert!(s.eq_class("q").is_err());
    }

    #[test]
    fn approximations_of_e1() {
        let s = e1();
        let r = s.approx_set(&set(&s, &["a", "b", "c"])).unwrap();
        assert_eq!(r.lower, set(&s, &["a", "b"]));
        assert_eq!(r.upper, s.universe().full());
        assert_eq!(r.boundary, set(&s, &["c", "d"]));
        assert!(s.is_rough(&set(&s, &["a", "b", "c"])).unwrap());
        assert!(!s.is_rough(&set(&s, &["a", "b"])).unwrap());
        assert!(!s.is_rough(&ElemSet::empty()).unwrap());

        let full = s.approx_set(&s.universe().full()).unwrap();
        assert_eq!(full.lower, full.upper);
        let empty = s.approx_set(&ElemSet::empty()).unwrap();
        assert!(empty.lower.is_empty() && empty.upper.is_empty());
    }

    #[test]
    fn product_classes() {
        let s = e1();
        assert_eq!(
            s.product_class("a", "c").unwrap(),
            PairSet::from_pairs([(0, 2), (0, 3), (1, 2), (1, 3)])
        );
        assert_eq!(s.product_class("a", "a").unwrap().len(), 4);
    }

    #[test]
    fn relation_approximations() {
        let s = e1();
        let ab = set(&s, &["a", "b"]).square();
        let r = s.approx_relation(&ab).unwrap();
        assert_eq!((r.lower.clone(), r.upper.clone()), (ab.clone(), ab.clone()));

        let r = s.approx_relation(&PairSet::from_pairs([(0, 0)])).unwrap();
        assert!(r.lower.is_empty());
        assert_eq!(r.upper, ab);

        let all = s.universe().full().square();
        let r = s.approx_relation(&all).unwrap();
        assert_eq!((r.lower, r.upper), (all.clone(), all));
    }

    #[test]
    fn rectangle_regions() {
        let s = e1();
        let r = s.rect_regions(&set(&s, &["a", "b", "c"])).unwrap();
        assert_eq!(r.lower, set(&s, &["a", "b"]).square());
        assert_eq!(r.upper.len(), 16);
        assert_eq!(r.boundary.len(), 12);

        let r = s.rect_regions(&s.universe().full()).unwrap();
        assert_eq!(r.lower.len(), 16);
        assert!(r.boundary.is_empty());

        let u = Universe::new(["a", "b"]).unwrap();
        let e2 = ApproximationSpace::new(u, &[vec!["a", "b"]]).unwrap();
        let r = e2.rect_regions(&e2.universe().subset(&["a"]).unwrap()).unwrap();
        assert!(r.lower.is_empty());
        assert_eq!(r.upper.len(), 4);
    }

    #[test]
    fn out_of_range_subset_is_rejected() {
        let s = e1();
        assert!(matches!(
            s.approx_set(&ElemSet::from_elems([7])),
            Err(Error::UnknownElement(_))
        ));
    }
}
