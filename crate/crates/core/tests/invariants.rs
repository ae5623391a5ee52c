use rotknot_core::bracket::{binary_bracket, normalized_f, rotational_bracket, standard_bracket};
use rotknot_core::hopf::{functor_image, simplify};
use rotknot_core::parity::{crossing_parities, parity_bracket};
use rotknot_core::poly::{parse_laurent, LaurentPoly};
use rotknot_core::quantum::{bracket_model, evaluate, homflypt_model, z_state_sum};
use rotknot_core::{GaussCode, MorseDiagram, Orientation};

const TREFOIL: &str = "cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0";
const FIGURE_EIGHT: &str = "cup 0 / cup 1 / x+ 0 / x- 1 / x+ 0 / x+ 0 / cap 1 / cap 0";
const VIRTUAL_TREFOIL: &str = "cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0";

fn d(s: &str) -> MorseDiagram {
    MorseDiagram::parse(s).unwrap()
}

#[test]
fn classical_brackets_agree() {
    for s in [TREFOIL, FIGURE_EIGHT] {
        let k = d(s);
        // on classical diagrams every loop is a round circle, and the
        // rotational bracket keeps the factor d of the last loop
        assert_eq!(rotational_bracket(&k), &LaurentPoly::loop_value() * &standard_bracket(&k));
        assert_eq!(parity_bracket(&k).bracket_normalized(), Some(standard_bracket(&k)));
    }
}

#[test]
fn figure_eight_is_amphichiral() {
    let f = normalized_f(&d(FIGURE_EIGHT), &Orientation::default());
    assert_eq!(f, f.invert_base());
    assert_eq!(f, parse_laurent("A^8 - A^4 + 1 - A^-4 + A^-8").unwrap());
}

#[test]
fn tensor_and_state_sum_agree() {
    for s in [TREFOIL, FIGURE_EIGHT, VIRTUAL_TREFOIL] {
        let k = d(s);
        assert_eq!(evaluate(&k, &bracket_model()).unwrap(), z_state_sum(&k));
    }
}

#[test]
fn virtual_trefoil() {
    let k = d(VIRTUAL_TREFOIL);
    assert_eq!(k.diagram_genus(), 1);
    assert!(rotational_bracket(&k) != standard_bracket(&k));
    let code = k.gauss_code(&Orientation::default());
    assert!(crossing_parities(&code).all_odd());
    assert!(!binary_bracket(&k).is_zero());
}

#[test]
fn odd_gauss_code() {
    assert!(crossing_parities(&GaussCode::from_labels(&["ABACDBDC"])).all_odd());
    assert!(crossing_parities(&GaussCode::from_labels(&["ABAB"])).all_odd());
    assert!(!crossing_parities(&GaussCode::from_labels(&["ABBA"])).all_odd());
}

#[test]
fn homflypt_unknot_is_quantum_dimension() {
    // (q^(n+1) - q^-(n+1)) / (q - q^-1), written in t = q^(1/2)
    let want = ["t^2 + t^-2", "t^4 + 1 + t^-4", "t^6 + t^2 + t^-2 + t^-6"];
    for (n, w) in (1..=3).zip(want) {
        let m = homflypt_model(n);
        let got = evaluate(&MorseDiagram::unknot(), &m).unwrap();
        assert_eq!(got, parse_laurent(&w.replace('t', "A")).unwrap(), "n = {n}");
    }
}

#[test]
fn r2_pair_cancels_in_trace() {
    let k = d("cup 0 / cup 2 / x+ 1 / x- 1 / cap 2 / cap 0");
    let s = simplify(&functor_image(&k));
    assert!(s.unlink_form);
    assert_eq!(s.cancelled, 1);
    assert_eq!(standard_bracket(&k), LaurentPoly::loop_value());
}
