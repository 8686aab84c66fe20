//! Path algebras of quivers with monomial relations over F_p.
//!
//! An `Algebra` owns its nonzero-path basis (finite because the relation
//! ideal is admissible) and knows how to present its projectives and
//! injectives as quiver representations. Nakayama algebras get a dedicated
//! constructor from a Kupisch series, which also yields a complete list of
//! indecomposables (the radical-power quotients of the projectives).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{check_modulus, Mat};

pub const PATH_BASIS_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize, &str)>) -> Quiver {
        Quiver {
            vertex_count,
            arrows: arrows
                .into_iter()
                .map(|(s, t, l)| Arrow { source: s, target: t, label: l.to_string() })
                .collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.vertex_count == 0 {
            return Err(Error::Construction("quiver needs at least one vertex".into()));
        }
        for a in &self.arrows {
            if a.source >= self.vertex_count || a.target >= self.vertex_count {
                return Err(Error::Construction(format!(
                    "arrow {} has an out-of-range endpoint",
                    a.label
                )));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if self.arrows[..i].iter().any(|b| b.label == a.label) {
                return Err(Error::Construction(format!("duplicate arrow label {}", a.label)));
            }
        }
        Ok(())
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }
}

/// A path in the quiver: a start vertex plus a (possibly empty) sequence of
/// composable arrow indices, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.source, |&a| q.arrows[a].target)
    }

    /// Does this path contain `rel` as a contiguous arrow subsequence?
    fn contains_relation(&self, rel: &[usize]) -> bool {
        if rel.len() > self.arrows.len() {
            return false;
        }
        self.arrows.windows(rel.len()).any(|w| w == rel)
    }
}

/// Raw data of a declared module, resolved against an `Algebra` later.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeclaredModule {
    pub name: String,
    pub dims: Vec<usize>,
    /// Per-arrow matrices, rows = target dim, cols = source dim.
    pub maps: Vec<Mat>,
}

/// Basis-indexed path algebra of a quiver with monomial relations.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub quiver: Quiver,
    /// Relations as arrow-index sequences, each of length >= 2.
    pub relations: Vec<Vec<usize>>,
    pub p: u32,
    /// Nonzero paths modulo the relation ideal, in length-lexicographic order.
    pub path_basis: Vec<Path>,
    pub is_nakayama: bool,
    /// Kupisch data when built through `nakayama`.
    pub nakayama_series: Option<(Vec<usize>, bool)>,
    /// Explicit indecomposable list supplied by the user (non-Nakayama case).
    pub declared_indecomposables: Option<Vec<DeclaredModule>>,
}

impl Algebra {
    pub fn dim(&self) -> usize {
        self.path_basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    /// Index of a path in the basis, if the path is nonzero.
    pub fn path_index(&self, path: &Path) -> Option<usize> {
        self.path_basis.iter().position(|q| q == path)
    }

    fn path_is_nonzero(&self, path: &Path) -> bool {
        !self.relations.iter().any(|rel| path.contains_relation(rel))
    }

    /// Extend a nonzero path by one arrow; `None` if not composable or zero.
    pub fn extend_path(&self, path: &Path, arrow: usize) -> Option<Path> {
        if self.quiver.arrows[arrow].source != path.target(&self.quiver) {
            return None;
        }
        let mut ext = path.clone();
        ext.arrows.push(arrow);
        if self.path_is_nonzero(&ext) {
            Some(ext)
        } else {
            None
        }
    }

    /// The opposite algebra: arrows reversed, relations reversed.
    pub fn opposite(&self) -> Result<Arc<Algebra>> {
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|a| Arrow {
                source: a.target,
                target: a.source,
                label: format!("{}*", a.label),
            })
            .collect();
        let quiver = Quiver { vertex_count: self.quiver.vertex_count, arrows };
        let relations = self
            .relations
            .iter()
            .map(|rel| rel.iter().rev().copied().collect())
            .collect();
        build_path_algebra_from_indices(quiver, relations, self.p)
    }
}

/// Build a path algebra from a quiver and monomial relations given as
/// label paths.
pub fn build_path_algebra(q: Quiver, rels: &[Vec<String>], p: u32) -> Result<Arc<Algebra>> {
    let mut relations = Vec::new();
    for rel in rels {
        let mut idx = Vec::new();
        for label in rel {
            let Some(a) = q.arrow_index(label) else {
                return Err(Error::Construction(format!("relation uses unknown arrow {label}")));
            };
            idx.push(a);
        }
        relations.push(idx);
    }
    build_path_algebra_from_indices(q, relations, p)
}

pub fn build_path_algebra_from_indices(
    q: Quiver,
    relations: Vec<Vec<usize>>,
    p: u32,
) -> Result<Arc<Algebra>> {
    check_modulus(p)?;
    q.validate()?;
    for rel in &relations {
        if rel.len() < 2 {
            return Err(Error::Construction(
                "relations must be paths of length >= 2 (admissibility)".into(),
            ));
        }
        for w in rel.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(Error::Construction("relation path is not composable".into()));
            }
        }
    }

    let mut alg = Algebra {
        quiver: q,
        relations,
        p,
        path_basis: Vec::new(),
        is_nakayama: false,
        nakayama_series: None,
        declared_indecomposables: None,
    };

    // Enumerate nonzero paths breadth-first by length; within a length level,
    // order lexicographically by (source, arrow sequence).
    let mut level: Vec<Path> = (0..alg.quiver.vertex_count).map(Path::trivial).collect();
    let mut basis: Vec<Path> = Vec::new();
    while !level.is_empty() {
        basis.extend(level.iter().cloned());
        if basis.len() > PATH_BASIS_CAP {
            return Err(Error::Construction(format!(
                "path basis exceeds cap {PATH_BASIS_CAP}: the relation ideal is not admissible"
            )));
        }
        let mut next = Vec::new();
        for path in &level {
            for a in 0..alg.quiver.arrows.len() {
                if let Some(ext) = alg.extend_path(path, a) {
                    next.push(ext);
                }
            }
        }
        next.sort();
        level = next;
    }
    alg.path_basis = basis;
    Ok(Arc::new(alg))
}

/// Build a Nakayama algebra from a Kupisch series.
///
/// Linear case: vertices 0..n-1 with an arrow v -> v+1 exactly when c_v >= 2;
/// cyclic case: the full cycle with every c_v >= 2. Relations are the paths
/// of length c_v starting at v, whenever such a path exists in the quiver.
pub fn nakayama(series: &[usize], cyclic: bool, p: u32) -> Result<Arc<Algebra>> {
    let n = series.len();
    if n == 0 {
        return Err(Error::Construction("empty Kupisch series".into()));
    }
    if series.iter().any(|&c| c == 0) {
        return Err(Error::Construction("Kupisch entries must be >= 1".into()));
    }
    if cyclic {
        if series.iter().any(|&c| c < 2) {
            return Err(Error::Construction("cyclic Kupisch entries must be >= 2".into()));
        }
        for i in 0..n {
            if series[(i + 1) % n] + 1 < series[i] {
                return Err(Error::Construction(format!(
                    "Kupisch condition violated at position {i}: c[{}] >= c[{i}] - 1 fails",
                    (i + 1) % n
                )));
            }
        }
    } else {
        for i in 0..n - 1 {
            if series[i + 1] + 1 < series[i] {
                return Err(Error::Construction(format!(
                    "Kupisch condition violated at position {i}: c[{}] >= c[{i}] - 1 fails",
                    i + 1
                )));
            }
        }
        if series[n - 1] != 1 {
            return Err(Error::Construction(
                "linear Kupisch series must end with 1 (the last projective is simple)".into(),
            ));
        }
    }

    let mut arrows = Vec::new();
    for v in 0..n {
        let has_arrow = if cyclic { true } else { v + 1 < n && series[v] >= 2 };
        if has_arrow {
            arrows.push(Arrow {
                source: v,
                target: (v + 1) % n,
                label: format!("a{v}"),
            });
        }
    }
    let quiver = Quiver { vertex_count: n, arrows };

    // Relation at v: the unique path of length c_v from v, if it exists.
    let mut relations: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let mut rel = Vec::new();
        let mut at = v;
        let mut ok = true;
        for _ in 0..series[v] {
            match quiver.arrows.iter().position(|a| a.source == at) {
                Some(ai) => {
                    rel.push(ai);
                    at = quiver.arrows[ai].target;
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        // A shorter relation starting inside this one makes it redundant; the
        // path-basis construction handles that, so keep only valid-length ones.
        if ok && rel.len() >= 2 {
            relations.push(rel);
        }
    }
    relations.dedup();

    let built = build_path_algebra_from_indices(quiver, relations, p)?;
    let mut alg = (*built).clone();
    alg.is_nakayama = true;
    alg.nakayama_series = Some((series.to_vec(), cyclic));

    // Sanity: the projective at v must have Loewy length exactly c_v, i.e.
    // the longest nonzero path from v has length c_v - 1.
    for v in 0..n {
        let max_len = alg
            .path_basis
            .iter()
            .filter(|q| q.source == v)
            .map(Path::len)
            .max()
            .unwrap_or(0);
        if max_len + 1 != series[v] {
            return Err(Error::Construction(format!(
                "Kupisch series not realizable: projective at vertex {} has length {}, wanted {}",
                v,
                max_len + 1,
                series[v]
            )));
        }
    }
    Ok(Arc::new(alg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_path_basis() {
        let q = Quiver::new(2, vec![(0, 1, "a")]);
        let alg = build_path_algebra(q, &[], 2).unwrap();
        assert_eq!(alg.dim(), 3); // e0, e1, a
        assert_eq!(alg.path_basis[0], Path::trivial(0));
        assert_eq!(alg.path_basis[2].arrows, vec![0]);
    }

    #[test]
    fn field_and_dual_numbers() {
        let q = Quiver::new(1, vec![]);
        let alg = build_path_algebra(q, &[], 3).unwrap();
        assert_eq!(alg.dim(), 1);

        let q = Quiver::new(1, vec![(0, 0, "a")]);
        let alg = build_path_algebra(q, &[vec!["a".into(), "a".into()]], 2).unwrap();
        assert_eq!(alg.dim(), 2); // e, a
    }

    #[test]
    fn loop_without_relation_rejected() {
        let q = Quiver::new(1, vec![(0, 0, "a")]);
        assert!(build_path_algebra(q, &[], 2).is_err());
    }

    #[test]
    fn nakayama_presets() {
        let a2 = nakayama(&[2, 1], false, 2).unwrap();
        assert_eq!(a2.dim(), 3);
        assert!(a2.relations.is_empty());

        let f5 = nakayama(&[1], false, 5).unwrap();
        assert_eq!(f5.dim(), 1);

        let c22 = nakayama(&[2, 2], true, 2).unwrap();
        assert_eq!(c22.dim(), 4); // e0, e1, a0, a1
        assert_eq!(c22.relations.len(), 2);

        let dual = nakayama(&[2], true, 2).unwrap();
        assert_eq!(dual.dim(), 2);

        assert!(nakayama(&[3, 1], false, 2).is_err()); // c2 >= c1 - 1 fails
        assert!(nakayama(&[2, 2], false, 2).is_err()); // linear must end in 1
        assert!(nakayama(&[2, 1], true, 2).is_err()); // cyclic needs >= 2
    }

    #[test]
    fn opposite_reverses() {
        let a2 = nakayama(&[2, 1], false, 2).unwrap();
        let op = a2.opposite().unwrap();
        assert_eq!(op.dim(), 3);
        assert_eq!(op.quiver.arrows[0].source, 1);
        assert_eq!(op.quiver.arrows[0].target, 0);
    }
}
