//! Checks that corrupted inputs are rejected rather than certified.

use dyshift_core::cartan::datum;
use dyshift_core::freealg::{reduce_modulo_templates, Family, FreeElem, Side, Sign};
use dyshift_core::limitphi::kernel_window;
use dyshift_core::morphisms::tau_c_elem;
use dyshift_core::scalar::{q, HPoly};

fn xx_element(hbar_sign: i64) -> FreeElem {
    let d = datum("A2");
    let y = Side::Yangian;
    let x = |i, r| FreeElem::x(&d, y, Sign::Plus, i, r);
    let lhs = &x(1, 1).bracket(&x(2, 0)).unwrap() - &x(1, 0).bracket(&x(2, 1)).unwrap();
    // the relation carries ħ d_12 {x_10, x_20} with d_12 = -1/2
    let anti = x(1, 0).antibracket(&x(2, 0)).unwrap();
    &lhs - &anti.scale_h(&HPoly::monomial(1, q(hbar_sign) * q(-1) / q(2)))
}

#[test]
fn correct_sign_reduces() {
    let red = reduce_modulo_templates(&xx_element(1), &datum("A2"), &[Family::Xx], 2).unwrap();
    assert!(red.residual.is_zero());
}

#[test]
fn flipped_hbar_sign_leaves_residual() {
    let red = reduce_modulo_templates(&xx_element(-1), &datum("A2"), &[Family::Xx], 2).unwrap();
    assert!(!red.residual.is_zero());
}

#[test]
fn shift_by_nonzero_is_not_identity() {
    let d = datum("A1");
    let x = FreeElem::x(&d, Side::Yangian, Sign::Plus, 1, 2);
    assert_ne!(tau_c_elem(&d, &q(1), &x).unwrap(), x);
    assert_eq!(tau_c_elem(&d, &q(0), &x).unwrap(), x);
}

#[test]
fn undersized_truncation_is_refused() {
    assert!(kernel_window(4, 4, 8, None).is_err());
    assert!(kernel_window(4, 4, 10, None).unwrap().kernel_is_cw());
}
