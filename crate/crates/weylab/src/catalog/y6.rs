//! Closed form of the order-6 integral (`k = 3`).

use super::{ab, pc, push_term, pw};
use crate::weyl::DiffOp;

pub(super) fn y6_template() -> DiffOp {
    let a2p1 = ab(&[(1, 0, 2), (0, 0, 1)]);
    let b2p1 = ab(&[(0, 1, 2), (0, 0, 1)]);
    let b2p3 = ab(&[(0, 1, 2), (0, 0, 3)]);
    let abp1 = ab(&[(1, 0, 1), (0, 1, 1), (0, 0, 1)]);
    let abp2 = ab(&[(1, 0, 1), (0, 1, 1), (0, 0, 2)]);
    let s1 = ab(&[(1, 0, 3), (0, 1, 3), (0, 0, 1)]);
    let s2 = ab(&[(1, 0, 3), (0, 1, 3), (0, 0, 2)]);
    let s5 = ab(&[(1, 0, 3), (0, 1, 3), (0, 0, 5)]);
    let s8 = ab(&[(1, 0, 3), (0, 1, 3), (0, 0, 8)]);
    let q12_6_19 = ab(&[(1, 0, 12), (0, 1, 6), (0, 0, 19)]);
    let q8_6_13 = ab(&[(1, 0, 8), (0, 1, 6), (0, 0, 13)]);
    let q6_20_57 = ab(&[(1, 0, 6), (0, 1, 20), (0, 0, 57)]);
    let q5_5_16 = ab(&[(1, 0, 5), (0, 1, 5), (0, 0, 16)]);
    let q6_8_27 = ab(&[(1, 0, 6), (0, 1, 8), (0, 0, 27)]);
    let q12_2_13 = ab(&[(1, 0, 12), (0, 1, 2), (0, 0, 13)]);
    let q6_4_17 = ab(&[(1, 0, 6), (0, 1, 4), (0, 0, 17)]);
    let quad_a = ab(&[(2, 0, 4), (1, 1, 6), (1, 0, 9), (0, 2, 2), (0, 1, 11), (0, 0, 7)]);
    let quad_b = ab(&[(2, 0, 16), (1, 1, 48), (1, 0, 80), (0, 2, 12), (0, 1, 48), (0, 0, 45)]);
    let quad_c = ab(&[(2, 0, 24), (1, 1, 60), (1, 0, 142), (0, 2, 24), (0, 1, 138), (0, 0, 173)]);
    let cubic_a = ab(&[
        (3, 0, 36),
        (2, 1, 216),
        (2, 0, 318),
        (1, 2, 216),
        (1, 1, 792),
        (1, 0, 685),
        (0, 3, 36),
        (0, 2, 306),
        (0, 1, 621),
        (0, 0, 362),
    ]);
    let quad_d = ab(&[(2, 0, 31), (1, 0, 41), (0, 2, 27), (0, 1, -27), (0, 0, 8)]);

    let mut terms = Vec::new();
    // Sixth order.
    push_term(&mut terms, 3, 0, 6, 0, pc(64));
    push_term(&mut terms, 0, 1, 6, 0, pc(-64));
    push_term(&mut terms, 4, 1, 4, 2, pc(-3456));
    push_term(&mut terms, 1, 2, 4, 2, pc(3456));
    push_term(&mut terms, 3, 2, 3, 3, pc(-6912));
    push_term(&mut terms, 0, 3, 3, 3, pc(6912));
    push_term(&mut terms, 5, 2, 2, 4, pc(46656));
    push_term(&mut terms, 2, 3, 2, 4, pc(-46656));
    push_term(&mut terms, 4, 3, 1, 5, pc(186624));
    push_term(&mut terms, 1, 4, 1, 5, pc(-186624));
    push_term(&mut terms, 3, 4, 0, 6, pc(186624));
    push_term(&mut terms, 0, 5, 0, 6, pc(-186624));
    // Fifth order.
    push_term(&mut terms, 3, 0, 5, 0, -192 * pw());
    push_term(&mut terms, 2, 0, 5, 0, 288 * a2p1.clone());
    push_term(&mut terms, 0, 1, 5, 0, 192 * pw());
    push_term(&mut terms, 4, 0, 4, 1, -1728 * b2p1.clone());
    push_term(&mut terms, 1, 1, 4, 1, 3456 * abp1.clone());
    push_term(&mut terms, 4, 1, 3, 2, 6912 * pw());
    push_term(&mut terms, 3, 1, 3, 2, -1728 * q12_6_19.clone());
    push_term(&mut terms, 1, 2, 3, 2, -6912 * pw());
    push_term(&mut terms, 0, 2, 3, 2, 3456 * s8.clone());
    push_term(&mut terms, 5, 1, 2, 3, 46656 * b2p3.clone());
    push_term(&mut terms, 3, 2, 2, 3, 10368 * pw());
    push_term(&mut terms, 2, 2, 2, 3, -15552 * q8_6_13.clone());
    push_term(&mut terms, 0, 3, 2, 3, -10368 * pw());
    push_term(&mut terms, 5, 2, 1, 4, -46656 * pw());
    push_term(&mut terms, 4, 2, 1, 4, 23328 * q6_20_57.clone());
    push_term(&mut terms, 2, 3, 1, 4, 46656 * pw());
    push_term(&mut terms, 1, 3, 1, 4, -93312 * q5_5_16.clone());
    push_term(&mut terms, 4, 3, 0, 5, -93312 * pw());
    push_term(
        &mut terms,
        3,
        3,
        0,
        5,
        46656 * ab(&[(1, 0, 6), (0, 1, 12), (0, 0, 47)]),
    );
    push_term(&mut terms, 1, 4, 0, 5, 93312 * pw());
    push_term(
        &mut terms,
        0,
        4,
        0,
        5,
        -93312 * ab(&[(1, 0, 6), (0, 1, 6), (0, 0, 25)]),
    );
    // Fourth order.
    push_term(&mut terms, 3, 0, 4, 0, 192 * pw().pow(2));
    push_term(&mut terms, 2, 0, 4, 0, -720 * a2p1.clone() * pw());
    push_term(&mut terms, 1, 0, 4, 0, 288 * a2p1.clone() * s2.clone());
    push_term(&mut terms, 0, 1, 4, 0, -192 * pw().pow(2));
    push_term(&mut terms, 4, 0, 3, 1, 3456 * b2p1.clone() * pw());
    push_term(&mut terms, 3, 0, 3, 1, -864 * b2p1.clone() * q12_2_13.clone());
    push_term(&mut terms, 1, 1, 3, 1, -6912 * abp1.clone() * pw());
    push_term(&mut terms, 0, 1, 3, 1, 1728 * quad_a.clone());
    push_term(&mut terms, 5, 0, 2, 2, 11664 * b2p3.clone() * b2p1.clone());
    push_term(&mut terms, 4, 1, 2, 2, -3456 * pw().pow(2));
    push_term(&mut terms, 3, 1, 2, 2, 2592 * q12_6_19 * pw());
    push_term(&mut terms, 2, 1, 2, 2, -3888 * quad_b.clone());
    push_term(&mut terms, 1, 2, 2, 2, 3456 * pw().pow(2));
    push_term(&mut terms, 0, 2, 2, 2, -5184 * s8 * pw());
    push_term(&mut terms, 5, 1, 1, 3, -46656 * b2p3.clone() * pw());
    push_term(&mut terms, 4, 1, 1, 3, 23328 * b2p3.clone() * q6_8_27.clone());
    push_term(&mut terms, 2, 2, 1, 3, 15552 * q8_6_13 * pw());
    push_term(&mut terms, 1, 2, 1, 3, -15552 * quad_c.clone());
    push_term(&mut terms, 5, 2, 0, 4, 15552 * pw().pow(2));
    push_term(&mut terms, 4, 2, 0, 4, -11664 * q6_20_57 * pw());
    push_term(
        &mut terms,
        3,
        2,
        0,
        4,
        23328 * ab(&[(2, 0, 4), (1, 1, 30), (1, 0, 83), (0, 2, 26), (0, 1, 179), (0, 0, 288)]),
    );
    push_term(&mut terms, 2, 3, 0, 4, -15552 * pw().pow(2));
    push_term(&mut terms, 1, 3, 0, 4, 46656 * q5_5_16 * pw());
    push_term(
        &mut terms,
        0,
        3,
        0,
        4,
        -46656 * ab(&[(2, 0, 13), (1, 1, 30), (1, 0, 97), (0, 2, 13), (0, 1, 97), (0, 0, 169)]),
    );
    // Third order.
    push_term(&mut terms, 3, 0, 3, 0, -64 * pw().pow(3));
    push_term(&mut terms, 2, 0, 3, 0, 576 * a2p1.clone() * pw().pow(2));
    push_term(
        &mut terms,
        1,
        0,
        3,
        0,
        -576 * ab(&[(2, 0, 6), (1, 1, 6), (1, 0, 7), (0, 1, 3), (0, 0, 2)]) * pw(),
    );
    push_term(&mut terms, 0, 1, 3, 0, 64 * pw().pow(3));
    push_term(&mut terms, 0, 0, 3, 0, 96 * a2p1.clone() * s2.clone() * s1.clone());
    push_term(&mut terms, 4, 0, 2, 1, -1728 * b2p1.clone() * pw().pow(2));
    push_term(&mut terms, 3, 0, 2, 1, 1296 * b2p1.clone() * q12_2_13 * pw());
    push_term(
        &mut terms,
        2,
        0,
        2,
        1,
        -7776 * a2p1.clone() * b2p1.clone() * ab(&[(1, 0, 2), (0, 1, 2), (0, 0, 3)]),
    );
    push_term(&mut terms, 1, 1, 2, 1, 3456 * abp1 * pw().pow(2));
    push_term(&mut terms, 0, 1, 2, 1, -2592 * quad_a * pw());
    push_term(&mut terms, 5, 0, 1, 2, -11664 * b2p3.clone() * b2p1.clone() * pw());
    push_term(&mut terms, 4, 0, 1, 2, 5832 * q6_4_17.clone() * b2p3.clone() * b2p1.clone());
    push_term(
        &mut terms,
        3,
        1,
        1,
        2,
        -1728 * ab(&[(1, 0, 6), (0, 0, 5)]) * pw().pow(2),
    );
    push_term(&mut terms, 2, 1, 1, 2, 3888 * quad_b * pw());
    push_term(&mut terms, 1, 1, 1, 2, -2592 * cubic_a.clone());
    push_term(&mut terms, 0, 2, 1, 2, 3456 * pw().pow(2));
    push_term(&mut terms, 5, 1, 0, 3, 15552 * b2p3.clone() * pw().pow(2));
    push_term(&mut terms, 4, 1, 0, 3, -11664 * b2p3.clone() * q6_8_27 * pw());
    push_term(
        &mut terms,
        3,
        1,
        0,
        3,
        432 * ab(&[
            (2, 1, 432),
            (2, 0, 648),
            (1, 2, 1296),
            (1, 1, 6048),
            (1, 0, 6156),
            (0, 3, 648),
            (0, 2, 5724),
            (0, 1, 15282),
            (0, 0, 12231),
        ]),
    );
    push_term(&mut terms, 3, 2, 0, 3, -1728 * pw().pow(3));
    push_term(&mut terms, 2, 2, 0, 3, -31104 * abp2.clone() * pw().pow(2));
    push_term(&mut terms, 1, 2, 0, 3, 7776 * quad_c * pw());
    push_term(
        &mut terms,
        0,
        2,
        0,
        3,
        -864 * ab(&[
            (3, 0, 324),
            (2, 1, 1404),
            (2, 0, 3240),
            (1, 2, 1404),
            (1, 1, 7452),
            (1, 0, 9582),
            (0, 3, 324),
            (0, 2, 3240),
            (0, 1, 9558),
            (0, 0, 8679),
        ]),
    );
    push_term(&mut terms, 0, 3, 0, 3, 1728 * pw().pow(3));
    // Second order.
    push_term(&mut terms, 2, 0, 2, 0, -144 * a2p1.clone() * pw().pow(3));
    push_term(
        &mut terms,
        1,
        0,
        2,
        0,
        8 * ab(&[(2, 0, 247), (1, 1, 216), (1, 0, 293), (0, 2, 27), (0, 1, 81), (0, 0, 80)])
            * pw().pow(2),
    );
    push_term(
        &mut terms,
        0,
        0,
        2,
        0,
        -144 * a2p1.clone() * s2.clone() * s1.clone() * pw(),
    );
    push_term(
        &mut terms,
        3,
        0,
        1,
        1,
        -864 * ab(&[(1, 0, 6), (0, 0, 5)]) * b2p1.clone() * pw().pow(2),
    );
    push_term(
        &mut terms,
        2,
        0,
        1,
        1,
        7776 * a2p1.clone()
            * b2p1.clone()
            * ab(&[(1, 0, 2), (0, 1, 2), (0, 0, 3)])
            * pw(),
    );
    push_term(
        &mut terms,
        1,
        0,
        1,
        1,
        -2592 * a2p1.clone() * b2p1.clone() * s2.clone() * s5.clone(),
    );
    push_term(
        &mut terms,
        0,
        1,
        1,
        1,
        48 * ab(&[(2, 0, 31), (1, 0, 41), (0, 2, 27), (0, 1, 45), (0, 0, 44)]) * pw().pow(2),
    );
    push_term(&mut terms, 5, 0, 0, 2, 3888 * b2p3.clone() * b2p1.clone() * pw().pow(2));
    push_term(
        &mut terms,
        4,
        0,
        0,
        2,
        -2916 * b2p3.clone() * b2p1.clone() * q6_4_17 * pw(),
    );
    push_term(
        &mut terms,
        3,
        0,
        0,
        2,
        5832 * b2p3.clone()
            * b2p1.clone()
            * ab(&[(1, 0, 1), (0, 1, 1), (0, 0, 4)])
            * ab(&[(1, 0, 4), (0, 1, 2), (0, 0, 7)]),
    );
    push_term(&mut terms, 3, 1, 0, 2, -1296 * b2p3.clone() * pw().pow(3));
    push_term(
        &mut terms,
        2,
        1,
        0,
        2,
        -72 * ab(&[(2, 0, 185), (1, 1, 648), (1, 0, 1003), (0, 2, 189), (0, 1, 783), (0, 0, 622)])
            * pw().pow(2),
    );
    push_term(&mut terms, 1, 1, 0, 2, 1296 * cubic_a * pw());
    push_term(&mut terms, 0, 2, 0, 2, 2592 * abp2.clone() * pw().pow(3));
    push_term(
        &mut terms,
        0,
        1,
        0,
        2,
        -1296 * ab(&[
            (4, 0, 36),
            (3, 1, 324),
            (3, 0, 450),
            (2, 2, 576),
            (2, 1, 1962),
            (2, 0, 1619),
            (1, 3, 324),
            (1, 2, 1962),
            (1, 1, 3678),
            (1, 0, 2213),
            (0, 4, 36),
            (0, 3, 450),
            (0, 2, 1611),
            (0, 1, 2181),
            (0, 0, 992),
        ]),
    );
    // First order.
    push_term(&mut terms, 1, 0, 1, 0, -8 * quad_d.clone() * pw().pow(3));
    push_term(&mut terms, 0, 0, 1, 0, 8 * quad_d * s1.clone() * pw().pow(2));
    push_term(&mut terms, 3, 0, 0, 1, -216 * b2p3 * b2p1.clone() * pw().pow(3));
    push_term(
        &mut terms,
        2,
        0,
        0,
        1,
        -36 * b2p1.clone()
            * ab(&[(2, 0, 185), (1, 1, 216), (1, 0, 355), (0, 2, -27), (0, 1, 135), (0, 0, 136)])
            * pw().pow(2),
    );
    push_term(
        &mut terms,
        1,
        0,
        0,
        1,
        1296 * b2p1.clone() * a2p1.clone() * s5 * s2.clone() * pw(),
    );
    push_term(
        &mut terms,
        0,
        1,
        0,
        1,
        24 * ab(&[(2, 0, 41), (1, 1, 108), (1, 0, 121), (0, 2, 9), (0, 1, 153), (0, 0, 82)])
            * pw().pow(3),
    );
    push_term(&mut terms, 0, 0, 0, 1, -1296 * a2p1 * b2p1 * abp2 * s1 * s2);
    DiffOp::from_terms(terms).expect("parametric template")
}
