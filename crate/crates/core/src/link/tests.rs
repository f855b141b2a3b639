use num_rational::BigRational;
use num_traits::Signed;

use super::*;
use crate::chain_complex::validate_complex;

const TREFOIL: &str = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]";
const HOPF: &str = "[[1,4,2,3],[3,2,4,1]]";
const FIGURE_EIGHT: &str = "X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]";
const FIVE_TWO: &str = "X[1,4,2,5], X[3,8,4,9], X[5,10,6,1], X[9,6,10,7], X[7,2,8,3]";

fn diagram(pd: &str) -> LinkDiagram {
    parse_pd(pd).unwrap().to_diagram().unwrap()
}

fn abs_det_sym(v: &SeifertMatrix) -> BigRational {
    v.det_combination(1, 1).abs()
}

#[test]
fn trefoil_and_hopf_parse() {
    let t = diagram(TREFOIL);
    assert_eq!((t.crossing_count(), t.component_count(), t.writhe()), (3, 1, 3));
    let h = diagram(HOPF);
    assert_eq!((h.crossing_count(), h.component_count()), (2, 2));
    assert_eq!(h.linking_number(0, 1).unwrap(), 1);
    assert_eq!(h.reverse_component(1).unwrap().linking_number(0, 1).unwrap(), -1);
    assert_eq!(h.linking_number(0, 0), Err(LinkError::SameComponent));
    assert!(matches!(h.linking_number(0, 5), Err(LinkError::UnknownComponent(5))));
}

#[test]
fn malformed_codes() {
    assert!(matches!(parse_pd("[[1,2,3,4]]"), Err(LinkError::LabelMultiplicity { .. })));
    assert!(matches!(parse_pd("[[1,2,3]]"), Err(LinkError::Arity { index: 0, found: 3 })));
    assert!(matches!(parse_pd("[[1,2,3,4"), Err(LinkError::Syntax(_))));
    // Under-strand entering on both ends of arc 1.
    assert!(parse_pd("[[1,2,3,4],[1,4,3,2]]").is_err());
    let u = parse_pd("[]").unwrap().to_diagram().unwrap();
    assert_eq!((u.crossing_count(), u.component_count()), (0, 1));
}

#[test]
fn braid_closures() {
    let tre = braid_to_diagram(&parse_braid("1,1,1", None).unwrap());
    assert_eq!((tre.component_count(), tre.writhe()), (1, 3));
    let hopf = braid_to_diagram(&parse_braid("1,1", None).unwrap());
    assert_eq!(hopf.component_count(), 2);
    assert_eq!(hopf.linking_number(0, 1).unwrap(), 1);
    let unlink = braid_to_diagram(&BraidWord::new(3, vec![]).unwrap());
    assert_eq!((unlink.component_count(), unlink.crossing_count()), (3, 0));
    assert!(matches!(parse_braid("1,3", Some(3)), Err(LinkError::BraidIndex { .. })));
    for w in ["1,1,1", "1,-2,1,-2", "1,2,1,2,2", "1,1,2,-1,2"] {
        let b = parse_braid(w, None).unwrap();
        assert_eq!(braid_to_diagram(&b).component_count(), b.cycle_count(), "{w}");
    }
}

#[test]
fn pd_round_trip() {
    let b = parse_braid("1,-2,1,-2", None).unwrap();
    let pd = braid_to_pd(&b);
    let again = parse_pd(&pd.to_string()).unwrap().to_diagram().unwrap();
    assert_eq!(again, braid_to_diagram(&b));
}

#[test]
fn mirror_and_reverse() {
    let t = diagram(TREFOIL);
    assert_eq!(t.mirror().writhe(), -3);
    assert_eq!(t.mirror().mirror(), t);
    let r = t.reverse_component(0).unwrap();
    assert_eq!(r.writhe(), 3);
    assert_eq!(t.add_kink(0, true).writhe(), 4);
    assert_eq!(t.add_kink(2, false).writhe(), 2);
}

#[test]
fn wirtinger_presentations() {
    let t = ColoredLinkDiagram::monochrome(diagram(TREFOIL));
    let w = wirtinger(&t);
    assert_eq!((w.generator_count(), w.relators.len()), (3, 3));
    for r in &w.relators {
        assert_eq!(w.abelianize(r, 1), vec![0]);
    }
    let u = ColoredLinkDiagram::monochrome(diagram("[]"));
    let w = wirtinger(&u);
    assert_eq!((w.generator_count(), w.relators.len()), (1, 0));
    let c = fox_complex(&w, &u).unwrap();
    assert_eq!(c.ranks, vec![1, 1, 0]);
    let h = ColoredLinkDiagram::by_component(diagram(HOPF));
    let w = wirtinger(&h);
    assert_eq!(w.generator_count(), 2);
    for r in &w.relators {
        assert_eq!(w.abelianize(r, 2), vec![0, 0]);
    }
    assert!(validate_complex(&fox_complex(&w, &h).unwrap()).is_ok());
}

#[test]
fn seifert_matrices_from_braids() {
    let v = braid_seifert_matrix(&parse_braid("1,2,1,2", None).unwrap()).unwrap();
    assert_eq!(v.v, vec![vec![-1, 1], vec![0, -1]]);
    let v = braid_seifert_matrix(&parse_braid("1,1,1", None).unwrap()).unwrap();
    assert_eq!(v.v, vec![vec![-1, 1], vec![0, -1]]);
    assert!(matches!(braid_seifert_matrix(&BraidWord::new(3, vec![1, 1]).unwrap()), Err(LinkError::Disconnected)));
}

#[test]
fn seifert_matrices_from_diagrams() {
    let one = BigRational::from_integer(1.into());
    for (pd, det) in [(TREFOIL, 3), (FIGURE_EIGHT, 5), (FIVE_TWO, 7)] {
        let v = seifert_from_diagram(&diagram(pd)).unwrap();
        assert_eq!(abs_det_sym(&v), BigRational::from_integer(det.into()), "{pd}");
        assert_eq!(v.det_combination(1, -1).abs(), one, "{pd}");
    }
    // Both eigenvalues of V + V^T share a sign: the determinant is +3.
    let tv = seifert_from_diagram(&diagram(TREFOIL)).unwrap();
    assert_eq!(tv.v, vec![vec![-1, 1], vec![0, -1]]);
    assert_eq!(seifert_from_diagram(&diagram("[]")).unwrap().size(), 0);
    let split = braid_to_diagram(&BraidWord::new(3, vec![1, 1, 1]).unwrap());
    assert_eq!(seifert_from_diagram(&split), Err(LinkError::Disconnected));
}

#[test]
fn coloring_parse() {
    assert_eq!(parse_coloring("0:1,1:2", 2).unwrap(), vec![1, 2]);
    assert_eq!(parse_coloring("", 2).unwrap(), vec![1, 1]);
    assert!(parse_coloring("3:1", 2).is_err());
    let h = diagram(HOPF);
    assert!(ColoredLinkDiagram::new(h.clone(), vec![1, 3]).is_err());
    assert_eq!(ColoredLinkDiagram::new(h, vec![2, 1]).unwrap().m(), 2);
}
