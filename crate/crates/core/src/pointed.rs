//! Finite pointed sets.
//!
//! Elements of a pointed set of size `n` are `0..n` with `0` the basepoint.
//! A map is its table of images. Two deflation classes are available: the
//! kernel collapses (surjective and injective away from the fiber over the
//! basepoint), and all surjections.

use std::fmt;

use crate::category::{AdmissibleFactorization, Category, Cokernel, Kernel, Pullback};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedSet {
    size: usize,
}

impl PointedSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invalid("a pointed set has at least its basepoint".into()));
        }
        Ok(PointedSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

impl fmt::Display for PointedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "*{}", self.size)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointedMap {
    source: PointedSet,
    target: PointedSet,
    table: Vec<usize>,
}

impl PointedMap {
    pub fn new(source: PointedSet, target: PointedSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.size {
            return Err(Error::Invalid(format!("table has {} entries, expected {}", table.len(), source.size)));
        }
        if table[0] != 0 {
            return Err(Error::Invalid("the basepoint must map to the basepoint".into()));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.size) {
            return Err(Error::Invalid(format!("image {bad} is outside the target of size {}", target.size)));
        }
        Ok(PointedMap { source, target, table })
    }

    pub fn from_table(target_size: usize, table: &[usize]) -> Result<Self> {
        Self::new(PointedSet::new(table.len())?, PointedSet::new(target_size)?, table.to_vec())
    }

    pub fn source(&self) -> PointedSet {
        self.source
    }

    pub fn target(&self) -> PointedSet {
        self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size];
        for &t in &self.table {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.size];
        self.table.iter().all(|&t| !std::mem::replace(&mut hit[t], true))
    }

    /// Injective on the elements not sent to the basepoint.
    pub fn is_injective_off_kernel(&self) -> bool {
        let mut hit = vec![false; self.target.size];
        self.table.iter().filter(|&&t| t != 0).all(|&t| !std::mem::replace(&mut hit[t], true))
    }
}

impl fmt::Debug for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.source, self.target, self.table)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DeflationClass {
    /// Surjective and injective away from the fiber over the basepoint.
    #[default]
    KernelCollapse,
    AllSurjections,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PointedSets {
    pub class: DeflationClass,
}

impl PointedSets {
    pub fn new(class: DeflationClass) -> Self {
        PointedSets { class }
    }

    pub fn object(&self, size: usize) -> Result<PointedSet> {
        PointedSet::new(size)
    }

    pub fn map(&self, source: usize, target: usize, table: &[usize]) -> Result<PointedMap> {
        PointedMap::new(PointedSet::new(source)?, PointedSet::new(target)?, table.to_vec())
    }

    fn check_ends(&self, what: &str, f: &PointedMap, expected: PointedSet, source_side: bool) -> Result<()> {
        let actual = if source_side { f.source } else { f.target };
        if actual != expected {
            return Err(Error::NotComposable(format!("{what}: {actual} does not match {expected}")));
        }
        Ok(())
    }
}

impl Category for PointedSets {
    type Object = PointedSet;
    type Morphism = PointedMap;

    fn zero_object(&self) -> PointedSet {
        PointedSet { size: 1 }
    }

    fn source(&self, f: &PointedMap) -> PointedSet {
        f.source
    }

    fn target(&self, f: &PointedMap) -> PointedSet {
        f.target
    }

    fn identity(&self, a: &PointedSet) -> PointedMap {
        PointedMap { source: *a, target: *a, table: (0..a.size).collect() }
    }

    fn compose(&self, g: &PointedMap, f: &PointedMap) -> Result<PointedMap> {
        if f.target != g.source {
            return Err(Error::NotComposable(format!("{f:?} then {g:?}")));
        }
        Ok(PointedMap { source: f.source, target: g.target, table: f.table.iter().map(|&x| g.table[x]).collect() })
    }

    fn equal(&self, f: &PointedMap, g: &PointedMap) -> bool {
        f == g
    }

    fn to_zero(&self, a: &PointedSet) -> PointedMap {
        PointedMap { source: *a, target: self.zero_object(), table: vec![0; a.size] }
    }

    fn from_zero(&self, b: &PointedSet) -> PointedMap {
        PointedMap { source: self.zero_object(), target: *b, table: vec![0] }
    }

    fn is_deflation(&self, f: &PointedMap) -> bool {
        match self.class {
            DeflationClass::KernelCollapse => f.is_surjective() && f.is_injective_off_kernel(),
            DeflationClass::AllSurjections => f.is_surjective(),
        }
    }

    /// Inclusion of the fiber over the basepoint, order preserving.
    fn kernel(&self, p: &PointedMap) -> Result<Kernel<PointedSet, PointedMap>> {
        let fiber: Vec<usize> = (0..p.source.size).filter(|&x| p.table[x] == 0).collect();
        let object = PointedSet { size: fiber.len() };
        Ok(Kernel { object, inclusion: PointedMap { source: object, target: p.source, table: fiber } })
    }

    /// Collapse of the image to the basepoint, renumbering the rest in order.
    fn cokernel(&self, i: &PointedMap) -> Result<Cokernel<PointedSet, PointedMap>> {
        let mut in_image = vec![false; i.target.size];
        for &t in &i.table {
            in_image[t] = true;
        }
        let mut table = vec![0; i.target.size];
        let mut next = 1;
        for (y, &hit) in in_image.iter().enumerate() {
            if !hit {
                table[y] = next;
                next += 1;
            }
        }
        let object = PointedSet { size: next };
        Ok(Cokernel { object, projection: PointedMap { source: i.target, target: object, table } })
    }

    fn kernel_lift(&self, p: &PointedMap, k: &PointedMap, g: &PointedMap) -> Result<PointedMap> {
        self.check_ends("kernel_lift: k", k, p.source, false)?;
        self.check_ends("kernel_lift: g", g, p.source, false)?;
        if g.table.iter().any(|&y| p.table[y] != 0) {
            return Err(Error::Precondition("kernel_lift: p∘g is not zero".into()));
        }
        let mut preimage = vec![None; k.target.size];
        for (x, &y) in k.table.iter().enumerate() {
            if preimage[y].replace(x).is_some() {
                return Err(Error::Precondition("kernel_lift: k is not injective".into()));
            }
        }
        let table = g
            .table
            .iter()
            .map(|&y| preimage[y].ok_or_else(|| Error::Precondition("kernel_lift: g does not factor through k".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointedMap { source: g.source, target: k.source, table })
    }

    fn cokernel_colift(&self, i: &PointedMap, c: &PointedMap, g: &PointedMap) -> Result<PointedMap> {
        self.check_ends("cokernel_colift: c", c, i.target, true)?;
        self.check_ends("cokernel_colift: g", g, i.target, true)?;
        if i.table.iter().any(|&x| g.table[x] != 0) {
            return Err(Error::Precondition("cokernel_colift: g∘i is not zero".into()));
        }
        let mut table: Vec<Option<usize>> = vec![None; c.target.size];
        table[0] = Some(0);
        for (b, &q) in c.table.iter().enumerate() {
            match table[q] {
                Some(v) if v != g.table[b] => {
                    return Err(Error::Precondition("cokernel_colift: g does not factor through c".into()))
                }
                _ => table[q] = Some(g.table[b]),
            }
        }
        let table = table
            .into_iter()
            .map(|v| v.ok_or_else(|| Error::Precondition("cokernel_colift: c is not surjective".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointedMap { source: c.target, target: g.target, table })
    }

    fn inverse(&self, f: &PointedMap) -> Option<PointedMap> {
        if f.source.size != f.target.size || !f.is_injective() {
            return None;
        }
        let mut table = vec![0; f.target.size];
        for (x, &y) in f.table.iter().enumerate() {
            table[y] = x;
        }
        Some(PointedMap { source: f.target, target: f.source, table })
    }

    /// The set-theoretic pullback: pairs `(b, a)` with `p(b) = f(a)` in
    /// lexicographic order, `(0, 0)` first.
    fn pullback_of_deflation(&self, p: &PointedMap, f: &PointedMap) -> Result<Pullback<PointedSet, PointedMap>> {
        if p.target != f.target {
            return Err(Error::NotComposable("pullback: p and f need a common target".into()));
        }
        let pairs = pullback_pairs(p, f);
        let apex = PointedSet { size: pairs.len() };
        Ok(Pullback {
            apex,
            lifted: PointedMap { source: apex, target: p.source, table: pairs.iter().map(|&(b, _)| b).collect() },
            pulled_back: PointedMap { source: apex, target: f.source, table: pairs.iter().map(|&(_, a)| a).collect() },
        })
    }

    fn pullback_lift(
        &self,
        p: &PointedMap,
        f: &PointedMap,
        pb: &Pullback<PointedSet, PointedMap>,
        x: &PointedMap,
        y: &PointedMap,
    ) -> Result<PointedMap> {
        if x.source != y.source || x.target != p.source || y.target != f.source {
            return Err(Error::NotComposable("pullback_lift: x and y do not form a cone".into()));
        }
        let pairs: Vec<(usize, usize)> =
            (0..pb.apex.size).map(|t| (pb.lifted.table[t], pb.pulled_back.table[t])).collect();
        let table = (0..x.source.size)
            .map(|t| {
                let pair = (x.table[t], y.table[t]);
                pairs
                    .iter()
                    .position(|&q| q == pair)
                    .ok_or_else(|| Error::Precondition("pullback_lift: p∘x differs from f∘y".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PointedMap { source: x.source, target: pb.apex, table })
    }

    /// Corestriction onto the image followed by its inclusion, when the
    /// corestriction is a deflation.
    fn admissible_factorization(
        &self,
        f: &PointedMap,
    ) -> Result<Option<AdmissibleFactorization<PointedSet, PointedMap>>> {
        let mut image: Vec<usize> = f.table.clone();
        image.sort_unstable();
        image.dedup();
        let obj = PointedSet { size: image.len() };
        let deflation_part = PointedMap {
            source: f.source,
            target: obj,
            table: f.table.iter().map(|y| image.binary_search(y).expect("image element")).collect(),
        };
        if !self.is_deflation(&deflation_part) {
            return Ok(None);
        }
        let inflation_part = PointedMap { source: obj, target: f.target, table: image };
        Ok(Some(AdmissibleFactorization {
            morphism: f.clone(),
            kernel: self.kernel(&deflation_part)?,
            cokernel: self.cokernel(&inflation_part)?,
            deflation_part,
            inflation_part,
            image: obj,
        }))
    }

    fn enumerate_objects(&self, max_size: usize) -> Option<Vec<PointedSet>> {
        Some((1..=max_size).map(|size| PointedSet { size }).collect())
    }

    /// All tables in lexicographic order.
    fn enumerate_morphisms(&self, a: &PointedSet, b: &PointedSet) -> Option<Vec<PointedMap>> {
        let n = a.size;
        let count = b.size.checked_pow(u32::try_from(n - 1).ok()?)?;
        let mut out = Vec::with_capacity(count);
        let mut table = vec![0; n];
        loop {
            out.push(PointedMap { source: *a, target: *b, table: table.clone() });
            let mut pos = n;
            loop {
                if pos == 1 {
                    return Some(out);
                }
                pos -= 1;
                table[pos] += 1;
                if table[pos] < b.size {
                    break;
                }
                table[pos] = 0;
            }
        }
    }
}

fn pullback_pairs(p: &PointedMap, f: &PointedMap) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for b in 0..p.source.size {
        for a in 0..f.source.size {
            if p.table[b] == f.table[a] {
                pairs.push((b, a));
            }
        }
    }
    pairs
}
