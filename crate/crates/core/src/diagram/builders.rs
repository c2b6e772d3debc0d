//! Named corpus of small diagrams.
//!
//! Each entry is a Gauss-style listing: the passages met along every
//! component, `O`/`U` for the over/under passage of a classical crossing and
//! `A`/`B` for the first/second passage of a virtual one, followed by the
//! sign or chirality of each crossing. All entries are drawable on the sphere
//! with the listed signs.
//!
//! | name | components | crossings |
//! |---|---|---|
//! | unknot | free loop | none |
//! | unknot_kink_pos | O0 U0 | 0:+ |
//! | unknot_kink_neg | O0 U0 | 0:- |
//! | unknot_vkink | A0 B0 | 0:+ |
//! | trefoil | O0 U1 O2 U0 O1 U2 | all + |
//! | figure_eight | O0 U1 O2 U3 O1 U0 O3 U2 | 0:+ 1:+ 2:- 3:- |
//! | hopf_pos | O0 U1 / U0 O1 | all + |
//! | virtual_trefoil | O0 A2 O1 U0 B2 U1 | 0:+ 1:+ 2:- |
//! | virtual_hopf | O0 A1 / U0 B1 | 0:+ 1:- |
//! | kishino | O0 O1 A4 U0 U1 O2 O3 A5 U2 U3 B5 B4 | 0:- 1:+ 2:+ 3:- 4:- 5:+ |

use super::strands::{Node, Strands, Xing};
use super::{Role, VirtualDiagram};
use crate::error::{Error, Result};

pub const BUILDER_NAMES: [&str; 10] = [
    "unknot",
    "unknot_kink_pos",
    "unknot_kink_neg",
    "unknot_vkink",
    "trefoil",
    "figure_eight",
    "hopf_pos",
    "virtual_trefoil",
    "virtual_hopf",
    "kishino",
];

const O: Role = Role::First;
const U: Role = Role::Second;
const A: Role = Role::First;
const B: Role = Role::Second;

/// `(crossing, role)` along each component, and `(classical, sign)` per
/// crossing.
pub(crate) fn from_gauss(comps: &[&[(usize, Role)]], xings: &[(bool, i8)]) -> VirtualDiagram {
    let mut tag = 0;
    let comps = comps
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|&(x, role)| {
                    tag += 1;
                    Node { x, role, tag: tag - 1 }
                })
                .collect()
        })
        .collect();
    let xings = xings
        .iter()
        .map(|&(classical, kappa)| Some(Xing { classical, kappa }))
        .collect();
    Strands { xings, comps, free_loops: 0, next_tag: tag }.to_diagram()
}

pub fn builder(name: &str) -> Result<VirtualDiagram> {
    let c = |k: i8| (true, k);
    let v = |k: i8| (false, k);
    let d = match name {
        "unknot" => VirtualDiagram::unknot(),
        "unknot_kink_pos" => from_gauss(&[&[(0, O), (0, U)]], &[c(1)]),
        "unknot_kink_neg" => from_gauss(&[&[(0, O), (0, U)]], &[c(-1)]),
        "unknot_vkink" => from_gauss(&[&[(0, A), (0, B)]], &[v(1)]),
        "trefoil" => from_gauss(
            &[&[(0, O), (1, U), (2, O), (0, U), (1, O), (2, U)]],
            &[c(1), c(1), c(1)],
        ),
        "figure_eight" => from_gauss(
            &[&[(0, O), (1, U), (2, O), (3, U), (1, O), (0, U), (3, O), (2, U)]],
            &[c(FIG8[0]), c(FIG8[1]), c(FIG8[2]), c(FIG8[3])],
        ),
        "hopf_pos" => from_gauss(&[&[(0, O), (1, U)], &[(0, U), (1, O)]], &[c(1), c(1)]),
        "virtual_trefoil" => from_gauss(
            &[&[(0, O), (2, A), (1, O), (0, U), (2, B), (1, U)]],
            &[c(1), c(1), v(VTREF)],
        ),
        "virtual_hopf" => from_gauss(&[&[(0, O), (1, A)], &[(0, U), (1, B)]], &[c(1), v(VHOPF)]),
        "kishino" => from_gauss(
            &[&[
                (0, O),
                (1, O),
                (4, A),
                (0, U),
                (1, U),
                (2, O),
                (3, O),
                (5, A),
                (2, U),
                (3, U),
                (5, B),
                (4, B),
            ]],
            &[c(-1), c(1), c(1), c(-1), v(KISH[0]), v(KISH[1])],
        ),
        other => return Err(Error::UnknownName(format!("diagram builder {other:?}"))),
    };
    Ok(d)
}

const FIG8: [i8; 4] = [1, 1, -1, -1];
const VTREF: i8 = -1;
const VHOPF: i8 = -1;
const KISH: [i8; 2] = [-1, 1];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::planar::genus;

    #[test]
    fn corpus_shapes() {
        let t = builder("trefoil").unwrap();
        assert_eq!((t.crossings.len(), t.edges, t.component_count()), (3, 6, 1));
        let v = builder("virtual_trefoil").unwrap();
        assert_eq!((v.classical_count(), v.virtual_count(), v.component_count()), (2, 1, 1));
        assert_eq!(builder("hopf_pos").unwrap().component_count(), 2);
        assert_eq!(builder("unknot").unwrap(), VirtualDiagram::unknot());
        assert!(matches!(builder("granny"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn listed_signs_are_the_planar_ones() {
        let fig8 = [(0, O), (1, U), (2, O), (3, U), (1, O), (0, U), (3, O), (2, U)];
        let flipped = from_gauss(&[&fig8], &[(true, 1), (true, 1), (true, 1), (true, -1)]);
        assert!(genus(&flipped) > 0);
        let vt = [(0, O), (2, A), (1, O), (0, U), (2, B), (1, U)];
        assert!(genus(&from_gauss(&[&vt], &[(true, 1), (true, 1), (false, -VTREF)])) > 0);
        for name in BUILDER_NAMES {
            let d = builder(name).unwrap();
            assert!(d.validate().is_valid(), "{name}");
            assert_eq!(genus(&d), 0, "{name}");
        }
    }
}
