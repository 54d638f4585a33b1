use serde::{Deserialize, Serialize};

use crate::family::Family;
use crate::invariants::snf::AbelianGroup;
use crate::openbook::{family_openbook, openbook_homology};
use crate::plumbing::{boundary_homology, family_graph};

/// `H_1` of the link computed three independent ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub family: Family,
    pub plumbing: AbelianGroup,
    pub monodromy: AbelianGroup,
    pub openbook: AbelianGroup,
    pub all_equal: bool,
}

/// Torus bundle homology `Z ⊕ coker(A - I)`.
pub fn torus_bundle_homology(family: &Family) -> AbelianGroup {
    AbelianGroup::cokernel(&family.monodromy().minus_identity()).with_extra_free(1)
}

pub fn homology_cross_check(family: &Family) -> HomologyReport {
    let plumbing = boundary_homology(&family_graph(family));
    let monodromy = torus_bundle_homology(family);
    let openbook = openbook_homology(&family_openbook(family)).expect("constructor-built open book");
    let all_equal = plumbing == monodromy && monodromy == openbook;
    HomologyReport {
        family: family.clone(),
        plumbing,
        monodromy,
        openbook,
        all_equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2z::CycleWord;

    #[test]
    fn examples() {
        let r = homology_cross_check(&Family::Elliptic(3));
        assert!(r.all_equal);
        assert_eq!(r.plumbing.to_string(), "Z^2 ⊕ Z/3");
        let r = homology_cross_check(&Family::Cusp(CycleWord::new(vec![2, 2, 3]).unwrap()));
        assert!(r.all_equal);
        assert_eq!(r.openbook.to_string(), "Z ⊕ Z/3");
        let r = homology_cross_check(&Family::Cusp(CycleWord::new(vec![4]).unwrap()));
        assert!(r.all_equal);
        assert_eq!(r.monodromy.to_string(), "Z ⊕ Z/2");
    }
}
