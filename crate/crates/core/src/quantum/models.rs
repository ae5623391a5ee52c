use super::{ModelSpec, Operator, OrientationMode};
use crate::poly::{Coeff, LaurentPoly};

fn delta(a: usize, b: usize) -> bool {
    a == b
}

fn kron(c: bool, v: &LaurentPoly) -> LaurentPoly {
    if c {
        v.clone()
    } else {
        LaurentPoly::zero()
    }
}

fn swap(dim: usize) -> Operator {
    Operator::from_fn(2, 2, dim, |i| kron(delta(i[0], i[3]) && delta(i[1], i[2]), &LaurentPoly::one()))
}

fn ai(k: i32, im: i64) -> LaurentPoly {
    LaurentPoly::term(1, k).scale(Coeff::new(0, im))
}

/// Unoriented bracket model: `M12 = iA`, `M21 = -iA^-1` for cups and caps;
/// `x-` gets `R = A M M + A^-1 1` and `x+` its inverse.
pub fn bracket_model() -> ModelSpec {
    let m = |a: usize, b: usize| match (a, b) {
        (0, 1) => ai(1, 1),
        (1, 0) => ai(-1, -1),
        _ => LaurentPoly::zero(),
    };
    let cup = Operator::from_fn(0, 2, 2, |i| m(i[0], i[1]));
    let cap = Operator::from_fn(2, 0, 2, |i| m(i[0], i[1]));
    let r = |h: i32, v: i32| {
        Operator::from_fn(2, 2, 2, |i| {
            let horiz = &(&m(i[0], i[1]) * &m(i[2], i[3])) * &LaurentPoly::term(1, h);
            let vert = kron(delta(i[0], i[2]) && delta(i[1], i[3]), &LaurentPoly::term(1, v));
            horiz + vert
        })
    };
    ModelSpec {
        name: "bracket".into(),
        labels: vec![1, 2],
        mode: OrientationMode::Unoriented,
        cup_left: cup.clone(),
        cup_right: cup,
        cap_left: cap.clone(),
        cap_right: cap,
        pos: r(-1, 1),
        neg: r(1, -1),
        virt: swap(2),
        half_q: false,
        override_checks: false,
    }
}

/// Binary bracket model over two colors with identity cups and caps.
/// `x-` gets the matrix sending `00 <-> 11` with weight `A` and fixing
/// `01`, `10` with weight `A^-1`; `x+` gets its inverse.
pub fn binary_model() -> ModelSpec {
    let id_cup = Operator::from_fn(0, 2, 2, |i| kron(delta(i[0], i[1]), &LaurentPoly::one()));
    let id_cap = Operator::from_fn(2, 0, 2, |i| kron(delta(i[0], i[1]), &LaurentPoly::one()));
    let r = |flip: i32, keep: i32| {
        Operator::from_fn(2, 2, 2, |i| {
            let (a, b, c, d) = (i[0], i[1], i[2], i[3]);
            if a == b && c == d && a != c {
                LaurentPoly::term(1, flip)
            } else if a != b && a == c && b == d {
                LaurentPoly::term(1, keep)
            } else {
                LaurentPoly::zero()
            }
        })
    };
    ModelSpec {
        name: "binary".into(),
        labels: vec![0, 1],
        mode: OrientationMode::Unoriented,
        cup_left: id_cup.clone(),
        cup_right: id_cup,
        cap_left: id_cap.clone(),
        cap_right: id_cap,
        pos: r(-1, 1),
        neg: r(1, -1),
        virt: swap(2),
        half_q: false,
        override_checks: false,
    }
}

/// Oriented Homflypt model `H_n` over spins `-n, -n+2, .., n`, in the
/// variable `t = q^(1/2)`.  Right caps and left cups are `M = q^(a/2)`,
/// left caps and right cups its inverse.
pub fn homflypt_model(n: usize) -> ModelSpec {
    homflypt_with(n, 1)
}

/// `lambda_exp` is the power of `q` used for `lambda`; anything other than
/// 1 breaks the model and is only used to exercise the checks.
pub(crate) fn homflypt_with(n: usize, lambda_exp: i32) -> ModelSpec {
    assert!(n >= 1);
    let labels: Vec<i32> = (0..=n as i32).map(|k| -(n as i32) + 2 * k).collect();
    let dim = labels.len();
    let q = |k: i32| LaurentPoly::term(1, 2 * k);
    let diag = |sign: i32| {
        let labels = labels.clone();
        move |i: &[usize]| kron(delta(i[0], i[1]), &LaurentPoly::term(1, sign * lambda_exp * labels[i[0]]))
    };
    let m_cup = Operator::from_fn(0, 2, dim, diag(1));
    let m_cap = Operator::from_fn(2, 0, dim, diag(1));
    let inv_cup = Operator::from_fn(0, 2, dim, diag(-1));
    let inv_cap = Operator::from_fn(2, 0, dim, diag(-1));
    let b = &q(1) - &q(-1);
    // positive crossing: A = q, B = q - q^-1, C = 0, D = 1
    let pos = Operator::from_fn(2, 2, dim, |i| {
        let (a, bb, c, d) = (i[0], i[1], i[2], i[3]);
        if a == bb {
            kron(c == a && d == bb, &q(1))
        } else if c == bb && d == a {
            LaurentPoly::one()
        } else if c == a && d == bb && a < bb {
            b.clone()
        } else {
            LaurentPoly::zero()
        }
    });
    // negative crossing: A' = q^-1, B' = 0, C' = q^-1 - q, D' = 1
    let neg = Operator::from_fn(2, 2, dim, |i| {
        let (a, bb, c, d) = (i[0], i[1], i[2], i[3]);
        if a == bb {
            kron(c == a && d == bb, &q(-1))
        } else if c == bb && d == a {
            LaurentPoly::one()
        } else if c == a && d == bb && a > bb {
            -&b
        } else {
            LaurentPoly::zero()
        }
    });
    ModelSpec {
        name: format!("homflypt-{n}"),
        labels,
        mode: OrientationMode::Oriented,
        cup_left: m_cup,
        cup_right: inv_cup,
        cap_left: inv_cap,
        cap_right: m_cap,
        pos,
        neg,
        virt: swap(dim),
        half_q: true,
        override_checks: false,
    }
}
