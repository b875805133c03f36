//! Multi-hour or large-memory runs. `cargo test --release -- --ignored`.

use downset_core::enumerate::count_unlabeled_by_descent;
use downset_core::games::{grundy, winloss, winning_moves};
use downset_core::linext::count_linear_extensions;
use downset_core::{BigUint, Complex, Face, Outcome};

fn antichain(text: &str) -> Complex {
    let faces: Vec<Face> = text
        .split(',')
        .map(|t| Face::from_vertices(t.trim().bytes().map(|b| b - b'0')).unwrap())
        .collect();
    Complex::closure_of(&faces, 7).unwrap()
}

#[test]
#[ignore]
fn b7_grundy_and_winning_moves() {
    let b7 = Complex::boolean_lattice(7).unwrap();
    assert_eq!(grundy(&b7).unwrap().0, 6);
    let (mut moves, _) = winning_moves(&b7, false).unwrap();
    moves.sort();
    let mut fours: Vec<Face> = (0..=255u8)
        .filter(|m| m.count_ones() == 4 && m & 0x80 == 0)
        .map(Face::from_bits)
        .collect();
    fours.sort();
    assert_eq!(fours.len(), 35);
    assert_eq!(moves, fours);

    let after = b7.chomp_move(Face::from_vertices([0, 1, 2]).unwrap()).unwrap();
    let (replies, _) = winning_moves(&after, false).unwrap();
    assert!(replies.contains(&Face::from_vertices([0, 1, 3, 4, 5]).unwrap()));
}

#[test]
#[ignore]
fn row_seven() {
    for (k, want) in [(3, 0), (4, 3), (6, 5), (7, 6)] {
        assert_eq!(
            grundy(&Complex::pnk(7, k).unwrap()).unwrap().0,
            want,
            "P(7,{k})"
        );
    }
}

#[test]
#[ignore]
fn p83_is_a_win() {
    assert_eq!(
        winloss(&Complex::pnk(8, 3).unwrap()).unwrap().0,
        Outcome::FirstPlayerWin
    );
}

#[test]
#[ignore]
fn b7_extensions() {
    let want: BigUint = concat!(
        "630470261306055898099742878692134361829979979674711225065761605059425",
        "237453564989302659882866111738567871048772795838071474370002961694720"
    )
    .parse()
    .unwrap();
    let b7 = Complex::boolean_lattice(7).unwrap();
    assert_eq!(count_linear_extensions(&b7).unwrap().0, want);
}

#[test]
#[ignore]
fn pn3_on_seven_points() {
    let want: BigUint = "11468744734494754078263804379304906839548713527318697219614310400000"
        .parse()
        .unwrap();
    assert_eq!(
        count_linear_extensions(&Complex::pnk(7, 3).unwrap())
            .unwrap()
            .0,
        want
    );
}

#[test]
#[ignore]
fn unlabeled_census_seven() {
    assert_eq!(count_unlabeled_by_descent(7).unwrap(), 490013148);
}

#[test]
#[ignore]
fn large_grundy_fixtures() {
    let cases = [
        (23, "012, 013, 014, 015, 023, 024, 025, 026, 034, 045, 056, 123, 126, 135, 136, 145, 236, 245, 346, 456"),
        (37, "0124, 0134, 0234, 1234, 0125, 0235, 1235, 0145, 0245, 1245, 0345, 2345, 0126, 0136, 0236, 1236, 0146, 0246, 1246, 0156, 1356"),
        (44, "012345, 01236, 01246, 01346, 2346, 01256, 1356, 2356, 0456"),
    ];
    for (want, text) in cases {
        assert_eq!(grundy(&antichain(text)).unwrap().0, want);
    }
}
