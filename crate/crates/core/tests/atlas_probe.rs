//! Ground-truth checks of the outer-class atlas against its expected
//! invariants, plus the pre-build oracles: signature separation and
//! stability of classification across the choice of invariant form.

use genus2_core::sympgroups::*;

#[test]
fn outer_atlas_matches_expected_data() {
    let table = generate_f3(GroupKind::GSp4F3).unwrap();
    let atlas = pgsp_outer_atlas(&table).unwrap();

    let mut summary: Vec<(String, u32, u32)> = atlas
        .classes
        .iter()
        .map(|c| (c.label.to_string(), c.proj_order, c.size))
        .collect();
    summary.sort();
    println!("atlas: {summary:?}");

    let expected_sizes: Vec<(ClassLabel, u32)> = vec![
        (ClassLabel::TwoC, 36),
        (ClassLabel::TwoD, 540),
        (ClassLabel::FourC, 540),
        (ClassLabel::FourD, 1620),
        (ClassLabel::SixG, 1440),
        (ClassLabel::SixH, 1440),
        (ClassLabel::SixI, 4320),
        (ClassLabel::EightA, 6480),
        (ClassLabel::TenA, 5184),
        (ClassLabel::TwelveC, 4320),
    ];
    for (label, size) in expected_sizes {
        assert_eq!(atlas.class(label).size, size, "{label}");
        // class sizes divide the projective group order
        assert_eq!(51840 % size, 0);
    }

    // charpoly pairs (ascending coefficient vectors)
    assert_eq!(atlas.class(ClassLabel::TwoC).charpolys, vec![[1, 0, 2, 0, 1]]);
    assert_eq!(atlas.class(ClassLabel::TwoD).charpolys, vec![[1, 0, 1, 0, 1]]);
    assert_eq!(
        atlas.class(ClassLabel::FourC).charpolys,
        vec![[1, 1, 2, 2, 1], [1, 2, 2, 1, 1]]
    );
    assert_eq!(atlas.class(ClassLabel::FourD).charpolys, vec![[1, 0, 0, 0, 1]]);
    assert_eq!(atlas.class(ClassLabel::SixG).charpolys, vec![[1, 0, 2, 0, 1]]);
    assert_eq!(atlas.class(ClassLabel::SixH).charpolys, vec![[1, 0, 2, 0, 1]]);
    assert_eq!(atlas.class(ClassLabel::SixI).charpolys, vec![[1, 0, 1, 0, 1]]);
    assert_eq!(
        atlas.class(ClassLabel::EightA).charpolys,
        vec![[1, 1, 1, 2, 1], [1, 2, 1, 1, 1]]
    );
    assert_eq!(
        atlas.class(ClassLabel::TenA).charpolys,
        vec![[1, 1, 0, 2, 1], [1, 2, 0, 1, 1]]
    );
    assert_eq!(
        atlas.class(ClassLabel::TwelveC).charpolys,
        vec![[1, 1, 2, 2, 1], [1, 2, 2, 1, 1]]
    );

    // S40 cycle types
    assert_eq!(
        s40_cycle_type(&atlas.class(ClassLabel::FourC).rep),
        vec![4, 4, 4, 4, 4, 4, 4, 4, 4, 4]
    );
    assert_eq!(
        s40_cycle_type(&atlas.class(ClassLabel::FourD).rep),
        vec![4, 4, 4, 4, 4, 4, 4, 4, 4, 4]
    );
    assert_eq!(
        s40_cycle_type(&atlas.class(ClassLabel::SixG).rep),
        vec![2, 2, 6, 6, 6, 6, 6, 6]
    );
    assert_eq!(
        s40_cycle_type(&atlas.class(ClassLabel::SixH).rep),
        vec![2, 2, 6, 6, 6, 6, 6, 6]
    );
    assert_eq!(s40_cycle_type(&Mat4F3::IDENTITY), vec![1u32; 40]);
    for c in &atlas.classes {
        assert_eq!(s40_cycle_type(&c.rep).iter().sum::<u32>(), 40);
    }

    // signature oracle
    let oracle = signature_oracle(&atlas);
    println!(
        "signature separates all: {}; collisions: {:?}",
        oracle.separates_all, oracle.colliding_labels
    );

    // regular semisimple classes: 3 inner (orders 5, 8, 10), 5 outer
    let (inner, outer) = reg_ss_classes(&table);
    let mut inner_orders: Vec<u32> =
        inner.iter().map(|&c| table.classes[c as usize].order).collect();
    inner_orders.sort_unstable();
    assert_eq!(inner_orders, vec![5, 8, 10]);
    assert_eq!(outer.len(), 5);

    // matrix-group predicates: the full group, and a cyclic group generated
    // by one order-5 regular semisimple element
    {
        let p = matrix_group_predicates(&table.generators).unwrap();
        assert_eq!(
            (p.absolutely_irreducible, p.has_reg_ss, p.has_reg_ss_outside_sp4),
            (true, true, true)
        );
        let order5 = table
            .classes
            .iter()
            .find(|c| c.order == 5)
            .map(|c| table.elems[c.rep as usize])
            .unwrap();
        let p5 = matrix_group_predicates(&[order5]).unwrap();
        assert_eq!(
            (p5.absolutely_irreducible, p5.has_reg_ss, p5.has_reg_ss_outside_sp4),
            (false, true, false)
        );
    }

    // Invariant-form spaces per outer class: the solution space of
    // {M alternating, g^T M g = -M} always has dimension >= 2, and for the
    // 6G/6H pair the choice of nondegenerate solution CHANGES the resulting
    // class. This is the oracle that forces the genuine Weil pairing in the
    // torsion-module pipeline: the linear system alone cannot separate 6G
    // from 6H.
    for c in &atlas.classes {
        let basis = invariant_form_space(&c.rep);
        let members = nondegenerate_members(&basis);
        assert!(basis.len() >= 2, "form space is never 1-dimensional");
        assert!(!members.is_empty());
        let mut labels: Vec<ClassLabel> = members
            .iter()
            .map(|m| {
                let p = symplectic_basis(m).unwrap();
                let g2 = p.inverse().unwrap().mul(&c.rep).mul(&p);
                assert_eq!(g2.similitude(), Some(2));
                atlas.label_by_membership(&g2, &table).unwrap()
            })
            .collect();
        labels.sort_unstable();
        labels.dedup();
        println!(
            "class {}: form space dim {}, nondegenerate members {}, labels {:?}",
            c.label,
            basis.len(),
            members.len(),
            labels
        );
        match c.label {
            ClassLabel::SixG | ClassLabel::SixH => {
                assert_eq!(labels, vec![ClassLabel::SixG, ClassLabel::SixH]);
            }
            _ => assert_eq!(labels, vec![c.label], "unambiguous classes are form-stable"),
        }
    }
}
