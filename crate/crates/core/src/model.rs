//! The nerve model of the ordered configuration space of `k` points and its
//! quotient by the symmetric group.

use crate::cells::{FaceCategory, Permutation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::nerve::{build_nerve, quotient_by_free_action, ChainAction, Nerve, SemiSimplicialSet};

#[derive(Clone, Debug)]
pub struct ConfigurationModel {
    pub graph: Graph,
    pub k: usize,
    pub category: FaceCategory,
    pub nerve: Nerve,
}

impl ConfigurationModel {
    pub fn new(g: &Graph, k: usize) -> Result<ConfigurationModel> {
        if k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        let category = FaceCategory::new(g, k);
        let nerve = build_nerve(&category)?;
        Ok(ConfigurationModel { graph: g.clone(), k, category, nerve })
    }

    pub fn complex(&self) -> &SemiSimplicialSet {
        &self.nerve.set
    }

    /// The action of every permutation of the points on all chains, in the
    /// order of [`Permutation::all`].
    pub fn symmetric_action(&self) -> ChainAction {
        let maps = Permutation::all(self.k)
            .iter()
            .map(|sigma| {
                self.nerve.induced_permutation(
                    |o| self.category.act_object(sigma, o),
                    |m| self.category.act_morphism(sigma, m),
                )
            })
            .collect();
        ChainAction { maps }
    }

    /// The model of the unordered configuration space.
    pub fn unordered(&self) -> Result<SemiSimplicialSet> {
        quotient_by_free_action(self.complex(), &self.symmetric_action())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSpec;
    use crate::homology::{chain_complex, homology};
    use crate::nerve::collapse_free_faces;

    fn s1() -> Graph {
        Graph::build(["v"], vec![EdgeSpec::closed("a", "v", "v")]).unwrap()
    }

    #[test]
    fn circle_two_points() {
        let m = ConfigurationModel::new(&s1(), 2).unwrap();
        assert_eq!(m.complex().fvector(), vec![4, 4]);
        let h = homology(&chain_complex(m.complex())).unwrap();
        assert_eq!(h.betti, vec![1, 1]);
        let q = m.unordered().unwrap();
        assert_eq!(q.fvector(), vec![2, 2]);
        assert_eq!(homology(&chain_complex(&q)).unwrap().betti, vec![1, 1]);
    }

    #[test]
    fn circle_one_point() {
        let m = ConfigurationModel::new(&s1(), 1).unwrap();
        assert_eq!(m.complex().fvector(), vec![2, 2]);
    }

    #[test]
    fn subdivided_circle() {
        let m = ConfigurationModel::new(&s1().subdivide(2).unwrap(), 2).unwrap();
        assert_eq!(m.complex().dimension().unwrap(), 2);
        assert!(m.complex().check_identities());
        let h = homology(&chain_complex(m.complex())).unwrap();
        assert_eq!(h.betti, vec![1, 1, 0]);
    }

    #[test]
    fn y_without_leaves() {
        let y = Graph::build(
            ["c", "x", "y", "z"],
            (1..=3).map(|i| EdgeSpec::closed(format!("e{i}"), "c", ["x", "y", "z"][i - 1])).collect(),
        )
        .unwrap();
        let m = ConfigurationModel::new(&y.remove_leaves(), 2).unwrap();
        assert_eq!(m.complex().fvector(), vec![18, 18]);
        assert_eq!(collapse_free_faces(m.complex()).fvector(), vec![12, 12]);
    }

    #[test]
    fn rejects_zero_points() {
        assert!(matches!(ConfigurationModel::new(&s1(), 0), Err(Error::InvalidConfig(_))));
    }
}
