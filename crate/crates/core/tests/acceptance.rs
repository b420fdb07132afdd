//! Acceptance suite: every exit criterion, each printing one pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use genus2_core::curves::*;
use genus2_core::gf::{field_make, FPoly, FieldCtx, ZPoly};
use genus2_core::jacobian::*;
use genus2_core::pipelines::*;
use genus2_core::repthy;
use genus2_core::sympgroups::*;

fn resources() -> &'static Resources {
    static RES: OnceLock<Resources> = OnceLock::new();
    RES.get_or_init(|| Resources::build().expect("resources"))
}

fn f2ctx() -> FieldCtx {
    field_make(2, 1).unwrap()
}

fn model(f: &[u8], h: &[u8], ctx: &FieldCtx) -> HyperellipticModel {
    HyperellipticModel {
        f: FPoly::from_scalars(f, ctx),
        h: FPoly::from_scalars(h, ctx),
    }
}

struct Criterion {
    name: &'static str,
    start: Instant,
}

impl Criterion {
    fn begin(name: &'static str) -> Criterion {
        Criterion {
            name,
            start: Instant::now(),
        }
    }
    fn pass(self, budget_secs: u64) {
        let elapsed = self.start.elapsed();
        if elapsed.as_secs() >= budget_secs {
            println!("ACCEPTANCE {}: FAIL (over budget: {elapsed:?})", self.name);
            panic!("{} exceeded its {budget_secs}s budget: {elapsed:?}", self.name);
        }
        println!("ACCEPTANCE {}: pass ({elapsed:?})", self.name);
    }
}

/// Criterion 1: the F2 enumeration totals and both five-part distributions.
#[test]
fn criterion_1_f2_enumeration() {
    let res = resources();
    let c = Criterion::begin("1 (F2 enumeration)");
    let report = enumerate_f2(res, 0).unwrap();
    assert_eq!(
        (report.total, report.smooth, report.ordinary),
        (2048, 768, 384)
    );
    let dist = |m: &BTreeMap<String, u32>| -> Vec<(String, u32)> {
        m.iter().map(|(k, v)| (k.clone(), *v)).collect()
    };
    assert_eq!(
        dist(&report.ordinary_classes),
        vec![
            ("10A".to_string(), 192),
            ("6G".to_string(), 32),
            ("6H".to_string(), 16),
            ("6I".to_string(), 48),
            ("8A".to_string(), 96),
        ]
    );
    assert_eq!(
        dist(&report.non_ordinary_classes),
        vec![
            ("10A".to_string(), 96),
            ("12C".to_string(), 144),
            ("4D".to_string(), 48),
            ("6G".to_string(), 48),
            ("8A".to_string(), 48),
        ]
    );
    c.pass(300);
}

/// Criterion 2: the F3 enumeration, all 40 table rows, and the exact
/// proportionality of the generalized sweep.
#[test]
fn criterion_2_f3_enumeration() {
    let c = Criterion::begin("2 (F3 enumeration)");
    let report = enumerate_f3(false).unwrap();
    assert_eq!(
        (
            report.total,
            report.smooth,
            report.ordinary,
            report.non_distinguished
        ),
        (2187, 1296, 864, 10)
    );
    // all 40 rows: (a, b) -> (wp, any, count)
    let expected: Vec<(i64, i64, bool, bool, u32)> = vec![
        (0, -5, false, false, 0),
        (0, -2, true, true, 30),
        (0, 1, false, true, 24),
        (0, 4, true, true, 24),
        (-3, 7, true, true, 24),
        (3, 7, true, true, 24),
        (0, -4, false, false, 0),
        (0, 5, false, true, 24),
        (0, 2, true, true, 36),
        (-3, 8, false, false, 0),
        (3, 8, false, false, 0),
        (0, -1, false, true, 24),
        (-3, 5, true, true, 24),
        (3, 5, true, true, 24),
        (-2, 7, false, true, 4),
        (1, 4, true, true, 24),
        (4, 10, false, true, 1),
        (-2, 1, false, true, 8),
        (-2, 4, true, true, 48),
        (1, -2, true, true, 8),
        (1, 1, true, true, 48),
        (-4, 10, false, true, 1),
        (-1, 4, true, true, 24),
        (2, 7, false, true, 4),
        (-1, -2, true, true, 8),
        (-1, 1, true, true, 48),
        (2, 1, false, true, 8),
        (2, 4, true, true, 48),
        (-4, 8, false, true, 6),
        (-1, -1, true, true, 24),
        (-1, 2, true, true, 48),
        (-1, 5, true, true, 24),
        (2, 2, true, true, 36),
        (2, 5, false, true, 24),
        (-2, 2, true, true, 36),
        (-2, 5, false, true, 24),
        (1, -1, true, true, 24),
        (1, 2, true, true, 48),
        (1, 5, true, true, 24),
        (4, 8, false, true, 6),
    ];
    assert_eq!(report.rows.len(), 40);
    for (a, b, wp, any, count) in expected {
        let row = report
            .rows
            .iter()
            .find(|r| (r.a, r.b) == (a, b))
            .unwrap_or_else(|| panic!("row ({a},{b}) missing"));
        assert_eq!(
            (row.jac_wp, row.jac_any, row.count),
            (wp, any, count),
            "row ({a},{b})"
        );
    }
    // generalized sweep: exact 81x proportionality
    let gen = enumerate_f3(true).unwrap();
    assert_eq!(
        (gen.total, gen.smooth, gen.ordinary, gen.non_distinguished),
        (81 * 2187, 81 * 1296, 81 * 864, 81 * 10)
    );
    c.pass(120);
}

/// Criterion 3: Weil polynomial lists and the bucket map.
#[test]
fn criterion_3_weil_polynomials() {
    let res = resources();
    let c = Criterion::begin("3 (Weil polynomials)");
    let p2 = weil_poly_enumerate(2);
    let p3 = weil_poly_enumerate(3);
    assert_eq!(p2.len(), 16);
    assert_eq!(p3.len(), 40);
    // frozen p=2 list
    let expected2: Vec<(i64, i64)> = vec![
        (-3, 5),
        (-2, 3),
        (-2, 5),
        (-1, -1),
        (-1, 1),
        (-1, 3),
        (0, -3),
        (0, -1),
        (0, 1),
        (0, 3),
        (1, -1),
        (1, 1),
        (1, 3),
        (2, 3),
        (2, 5),
        (3, 5),
    ];
    assert_eq!(p2, expected2);
    // bucket map: reduction -> sorted class-label set
    let buckets = weil_bucket_table(res);
    let by_poly = |a: i64, b: i64| -> Vec<String> {
        let mut row = buckets
            .iter()
            .find(|r| (r.a, r.b) == (a, b))
            .unwrap()
            .labels
            .clone();
        row.sort();
        row
    };
    assert_eq!(by_poly(0, -1), vec!["2C", "6G", "6H"]);
    assert_eq!(by_poly(-3, 5), vec!["2C", "6G", "6H"]);
    assert_eq!(by_poly(3, 5), vec!["2C", "6G", "6H"]);
    assert_eq!(by_poly(0, 1), vec!["2D", "6I"]);
    assert_eq!(by_poly(-2, 5), vec!["12C", "4C"]);
    assert_eq!(by_poly(1, -1), vec!["12C", "4C"]);
    assert_eq!(by_poly(2, 5), vec!["12C", "4C"]);
    assert_eq!(by_poly(-1, -1), vec!["12C", "4C"]);
    assert_eq!(by_poly(0, -3), vec!["4D"]);
    assert_eq!(by_poly(0, 3), vec!["4D"]);
    assert_eq!(by_poly(1, 1), vec!["8A"]);
    assert_eq!(by_poly(-1, 1), vec!["8A"]);
    assert_eq!(by_poly(-2, 3), vec!["10A"]);
    assert_eq!(by_poly(1, 3), vec!["10A"]);
    assert_eq!(by_poly(2, 3), vec!["10A"]);
    assert_eq!(by_poly(-1, 3), vec!["10A"]);
    c.pass(60);
}

/// Criterion 4: the group atlas with exact class data.
#[test]
fn criterion_4_group_atlas() {
    let c = Criterion::begin("4 (group atlas)");
    let res = resources();
    assert_eq!(res.table.elems.len(), 103680);
    let sp4: u32 = res
        .table
        .classes
        .iter()
        .filter(|cl| cl.nu == 1)
        .map(|cl| cl.size)
        .sum();
    assert_eq!(sp4, 51840);
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
    let mut total = 0;
    for (label, size) in expected_sizes {
        assert_eq!(res.atlas.class(label).size, size, "{label}");
        total += size;
    }
    assert_eq!(total, 25920);
    // charpoly pairs
    assert_eq!(res.atlas.class(ClassLabel::TwoC).charpolys, vec![[1, 0, 2, 0, 1]]);
    assert_eq!(res.atlas.class(ClassLabel::FourD).charpolys, vec![[1, 0, 0, 0, 1]]);
    assert_eq!(
        res.atlas.class(ClassLabel::TenA).charpolys,
        vec![[1, 1, 0, 2, 1], [1, 2, 0, 1, 1]]
    );
    // S40 cycle types
    assert_eq!(
        s40_cycle_type(&res.atlas.class(ClassLabel::FourC).rep),
        vec![4; 10]
    );
    assert_eq!(
        s40_cycle_type(&res.atlas.class(ClassLabel::FourD).rep),
        vec![4; 10]
    );
    assert_eq!(
        s40_cycle_type(&res.atlas.class(ClassLabel::SixG).rep),
        vec![2, 2, 6, 6, 6, 6, 6, 6]
    );
    assert_eq!(
        s40_cycle_type(&res.atlas.class(ClassLabel::SixH).rep),
        vec![2, 2, 6, 6, 6, 6, 6, 6]
    );
    // regular semisimple classes: 3 inner with orders {5, 8, 10}, 5 outer
    let (inner, outer) = reg_ss_classes(&res.table);
    let mut inner_orders: Vec<u32> = inner
        .iter()
        .map(|&i| res.table.classes[i as usize].order)
        .collect();
    inner_orders.sort_unstable();
    assert_eq!(inner_orders, vec![5, 8, 10]);
    assert_eq!(outer.len(), 5);
    c.pass(180);
}

/// Criterion 5: the dictionary, the Siegel stabilizer facts, and oddness.
#[test]
fn criterion_5_dictionary_and_oddness() {
    let c = Criterion::begin("5 (dictionary and oddness)");
    // the three generator images, bit for bit
    let m12 = perm_to_gsp4(&Perm6::from_cycles(&[&[1, 2]]));
    assert_eq!(
        m12,
        BitMat::from_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
    );
    let m222 = perm_to_gsp4(&Perm6::from_cycles(&[&[1, 2], &[3, 4], &[5, 6]]));
    assert_eq!(
        m222,
        BitMat::from_rows(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 0], &[0, 0, 0, 1]])
    );
    let m5 = perm_to_gsp4(&Perm6::from_cycles(&[&[1, 2, 3, 4, 5]]));
    assert_eq!(
        m5,
        BitMat::from_rows(&[&[0, 0, 1, 1], &[1, 1, 0, 0], &[1, 1, 1, 0], &[1, 0, 1, 1]])
    );
    // Coxeter relations of S6 hold for the images
    let s: Vec<Perm6> = (1..6)
        .map(|i| Perm6::from_cycles(&[&[i, i + 1]]))
        .collect();
    let id = BitMat::identity(4);
    for i in 0..5 {
        let mi = perm_to_gsp4(&s[i]);
        assert_eq!(mi.mul(&mi), id);
        for j in 0..5 {
            let mj = perm_to_gsp4(&s[j]);
            let prod = mi.mul(&mj);
            let ord = if i == j {
                1
            } else if i.abs_diff(j) == 1 {
                3
            } else {
                2
            };
            let mut acc = BitMat::identity(4);
            for _ in 0..ord {
                acc = acc.mul(&prod);
            }
            assert_eq!(acc, id, "braid relation ({i},{j})");
        }
    }
    // bijective homomorphism onto Sp4(F2)
    let dict = s6_gsp4_dictionary().unwrap();
    assert_eq!(dict.images.len(), 720);
    let table = generate_f2(GroupKind::Sp4F2).unwrap();
    assert_eq!(table.elems.len(), 720);
    for (p, m) in dict.images.iter().take(720) {
        assert!(table.contains(m));
        let q = Perm6::from_cycles(&[&[1, 2, 3]]);
        let lhs = perm_to_gsp4(&p.compose(&q));
        assert_eq!(lhs, m.mul(&perm_to_gsp4(&q)), "homomorphism at {p:?}");
    }
    // Siegel stabilizer facts
    let facts = siegel_parabolic_facts(&table, &dict).unwrap();
    assert_eq!(facts.stabilizer_order, 48);
    assert!(facts.equals_centralizer_of_unipotent);
    assert_eq!(facts.center_order, 2);
    assert_eq!(facts.derived_order, 12);
    assert!(facts.derived_is_a4_profile);
    assert!(facts.quotient_is_s4_profile);
    assert!(facts.central_is_triple_transposition);
    assert!(facts.order3_shapes_are_3_3);
    assert!(facts.s5b_intersection_is_2_group);
    // involution classes: n + 1 + floor(n/2) for n = 1, 2, 3
    let r1 = involution_oddness(1).unwrap();
    assert_eq!((r1.class_count(), r1.odd_class_count()), (2, 1));
    let r2 = involution_oddness(2).unwrap();
    assert_eq!((r2.class_count(), r2.odd_class_count()), (4, 2));
    let r3 = involution_oddness(3).unwrap();
    assert_eq!((r3.class_count(), r3.odd_class_count()), (5, 3));
    // the three explicit representatives: odd, odd, non-odd
    let odd1 = BitMat::from_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let odd2 = BitMat::from_rows(&[&[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let even = BitMat::from_rows(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
    assert!(is_strongly_odd(&odd1) && is_strongly_odd(&odd2) && !is_strongly_odd(&even));
    // oddness is conjugation-invariant: seeded random pairs in Sp4(F2)
    let mut state = 0x1234_5678u64;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize
    };
    for _ in 0..1000 {
        let a = table.elems[next() % 720];
        if a.mul(&a) != BitMat::identity(4) {
            continue;
        }
        let p = table.elems[next() % 720];
        let conj = p.mul(&a).mul(&p.pow_order_inverse());
        assert_eq!(
            a != BitMat::identity(4) && is_strongly_odd(&a),
            conj != BitMat::identity(4) && is_strongly_odd(&conj)
        );
    }
    c.pass(120);
}

/// Criterion 6: the A5 representation-theory battery.
#[test]
fn criterion_6_a5_reps() {
    let c = Criterion::begin("6 (A5 representation theory)");
    let reps = repthy::build_a5_reps().unwrap();
    let f2 = f2ctx();
    for rep in [&reps.k, &reps.u, &reps.u_sigma, &reps.v] {
        assert!(repthy::brauer_check(rep, &reps).unwrap(), "{}", rep.name);
    }
    assert!(repthy::weakly_adequate(&reps.group, &reps.v, &f2));
    let mk = repthy::Module::from_rep(&reps.k, &reps);
    assert_eq!(repthy::h1(&reps.group, &mk, &f2).unwrap().h1, 0);
    let mad = repthy::Module::adjoint_of_v(&reps);
    assert_eq!(repthy::h1(&reps.group, &mad, &f2).unwrap().h1, 0);
    let madk = repthy::Module::adjoint_mod_scalars(&reps);
    assert_eq!(repthy::h1(&reps.group, &madk, &f2).unwrap().h1, 1);
    let (vv, dim) = repthy::v_tensor_v_f4(&reps);
    let mut soc = repthy::socle(&vv, dim, &reps);
    soc.sort();
    assert_eq!(soc, vec![("V".to_string(), 1), ("k".to_string(), 1)]);
    c.pass(60);
}

/// Criterion 7: the pinned fixtures.
#[test]
fn criterion_7_fixtures() {
    let res = resources();
    let c = Criterion::begin("7 (fixtures)");
    let f2 = f2ctx();
    let f3 = field_make(3, 1).unwrap();

    // C1, C2, C3: charpolys and classes
    let cases: Vec<(&str, Vec<u8>, Vec<u8>, (i64, i64), ClassLabel)> = vec![
        ("C1", vec![0, 1, 1], vec![1, 0, 0, 1], (2, 3), ClassLabel::TenA),
        ("C2", vec![1, 1, 0, 1, 0, 1], vec![1, 0, 0, 1], (0, 1), ClassLabel::SixI),
        ("C3", vec![1, 0, 0, 1, 0, 1], vec![0, 1, 1], (0, -1), ClassLabel::SixH),
    ];
    for (name, f, h, ab, label) in cases {
        let m = model(&f, &h, &f2);
        let s = frobenius_charpoly(&m, &f2).unwrap();
        assert_eq!((s.a, s.b), ab, "{name} charpoly");
        assert!(s.ordinary && s.distinguished, "{name} flags");
        let module = three_torsion_module(&m, &f2, 7).unwrap();
        let got = classify_class(&module.frobenius, &res.table, &res.atlas).unwrap();
        assert_eq!(got, label, "{name} class");
    }

    // the Z/14 model: group order 14 at k = 1
    let z14 = model(&[0, 0, 0, 0, 1], &[1, 0, 0, 1], &f2);
    let s = frobenius_charpoly(&z14, &f2).unwrap();
    assert_eq!((s.a, s.b), (2, 3));
    assert_eq!(
        jac_order_from_charpoly(&s.charpoly(), 1),
        14u32.into()
    );

    // the four local-at-3 rows
    let rows3: Vec<(Vec<u8>, (i64, i64))> = vec![
        (vec![1, 2, 0, 0, 0, 1], (3, 7)),
        (vec![1, 1, 0, 1, 0, 1], (3, 5)),
        (vec![0, 1, 1, 0, 0, 1], (-1, 2)),
        (vec![1, 0, 1, 0, 1, 1], (1, 1)),
    ];
    for (f, ab) in rows3 {
        let m = model(&f, &[], &f3);
        let s = frobenius_charpoly(&m, &f3).unwrap();
        assert_eq!((s.a, s.b), ab);
        assert!(s.ordinary && s.distinguished);
    }

    // the ten Weierstrass-point partitions at 3
    let partitions: Vec<(Vec<i64>, Vec<u32>)> = vec![
        (vec![0, 4, 1, 64, 32, 4], vec![1, 1, 1, 2]),
        (vec![0, 4, -7, 0, 0, 4], vec![1, 1, 3]),
        (vec![1, -2, 3, 6, -11, 4], vec![1, 2, 2]),
        (vec![28, 64, 1, -32, -6, 4, 1], vec![1, 1, 4]),
        (vec![-8, -4, 0, 4, 5, 2, 1], vec![1, 2, 3]),
        (vec![1, 2, -1, 0, 3, 2, 1], vec![1, 5]),
        (vec![1, 0, -8, 6, 4, 0, 1], vec![2, 2, 2]),
        (vec![1, 2, 5, 2, 2, 0, 1], vec![2, 4]),
        (vec![1, -4, 10, -10, 5, 2, 1], vec![3, 3]),
        (vec![1, -2, 1, 2, -6, 4, 1], vec![6]),
    ];
    for (f, partition) in partitions {
        let z = ZPoly::from_i64(&f);
        let reduced = FPoly::from_scalars(&z.reduce_mod(3), &f3);
        let degs = genus2_core::gf::poly_factor_degrees(&reduced, &f3).unwrap();
        assert_eq!(degs, partition, "partition of {f:?}");
        let m = model(&z.reduce_mod(3), &[], &f3);
        let s = frobenius_charpoly(&m, &f3).unwrap();
        assert!(s.ordinary, "row {f:?} ordinary");
        // nine of the ten rows are 3-distinguished; the [2,2,2] row reduces
        // to the unique curve with Q = (x^2+2x+3)^2, which is not (its own
        // enumeration row has count 1 and no rational Weierstrass point)
        if partition != vec![2, 2, 2] {
            assert!(s.distinguished, "row {f:?} distinguished");
        } else {
            assert!(!s.distinguished);
            assert_eq!((s.a, s.b), (4, 10));
        }
    }

    // the 1982 model is singular mod 2
    let m1982 = IntegralModel::new(
        ZPoly::from_i64(&[0, 0, 1, -1, 1, -1]),
        ZPoly::from_i64(&[1, 1]),
    )
    .unwrap();
    let red = m1982.reduce_mod_p(2, &f2).unwrap();
    assert!(!is_smooth_genus2(&red, &f2));

    // the purely-toric model: singular mod 2 but with a rational
    // Weierstrass point over Q
    let toric = IntegralModel::new(
        ZPoly::from_i64(&[8, -2, -43, 47, -4, 1]),
        ZPoly::from_i64(&[-1, -1, -1]),
    )
    .unwrap();
    let red = toric.reduce_mod_p(2, &f2).unwrap();
    assert!(!is_smooth_genus2(&red, &f2));
    assert!(has_rational_weierstrass_point_q(&toric).unwrap());

    // the non-ordinary fixture: Q = x^4 + 2x^2 + 1 at 2
    let y797 = model(&[0, 0, 0, 1, 1, 1], &[1], &f2);
    let s = frobenius_charpoly(&y797, &f2).unwrap();
    assert_eq!((s.a, s.b), (0, 2));
    assert!(!s.ordinary);

    // density
    let f2r = enumerate_f2(res, 0).unwrap();
    let f3r = enumerate_f3(false).unwrap();
    let d = density_theorem_applicability(&f2r, &f3r).unwrap();
    assert_eq!(d.to_string(), "5551/46656");
    // factor checks: 624/2048 = 13/16 * 3/8 and 854/2187
    use num_rational::BigRational;
    let first = BigRational::new(624.into(), 2048.into());
    let expected_first =
        BigRational::new(13.into(), 16.into()) * BigRational::new(3.into(), 8.into());
    assert_eq!(first, expected_first);
    let second = BigRational::new(854.into(), 2187.into());
    assert_eq!(d, first * second);
    c.pass(300);
}

/// Criterion 8: cross-cutting property suites.
#[test]
fn criterion_8_property_suites() {
    let res = resources();
    let c = Criterion::begin("8 (property suites)");
    let f2 = f2ctx();
    let f3 = field_make(3, 1).unwrap();

    // distinguished <=> not a perfect square, across both full enumerations
    for fbits in 0u32..128 {
        for hbits in 0u32..16 {
            let f: Vec<u8> = (0..7).map(|i| ((fbits >> i) & 1) as u8).collect();
            let h: Vec<u8> = (0..4).map(|i| ((hbits >> i) & 1) as u8).collect();
            let m = model(&f, &h, &f2);
            if !is_smooth_genus2(&m, &f2) {
                continue;
            }
            let s = frobenius_charpoly(&m, &f2).unwrap();
            if s.ordinary {
                assert_eq!(
                    s.distinguished,
                    !charpoly_is_perfect_square(s.a, s.b, 2)
                );
            }
        }
    }
    for fidx in 0u32..2187 {
        let mut rem = fidx;
        let mut fc = [0u8; 7];
        for c in fc.iter_mut() {
            *c = (rem % 3) as u8;
            rem /= 3;
        }
        let m = model(&fc, &[], &f3);
        if !is_smooth_genus2(&m, &f3) {
            continue;
        }
        let s = frobenius_charpoly(&m, &f3).unwrap();
        if s.ordinary {
            assert_eq!(s.distinguished, !charpoly_is_perfect_square(s.a, s.b, 3));
        }
    }

    // Frobenius/charpoly/point-count triangle on every curve that reaches
    // torsion-module classification (the 6G/6H bucket), plus the fixtures:
    // 3^(dim ker(g^k - 1)) = #Jac(F_{2^k})[3] for k in {1, 2, 4, 8}
    let mut module_curves: Vec<HyperellipticModel> = Vec::new();
    for fbits in 0u32..128 {
        for hbits in 0u32..16 {
            let f: Vec<u8> = (0..7).map(|i| ((fbits >> i) & 1) as u8).collect();
            let h: Vec<u8> = (0..4).map(|i| ((hbits >> i) & 1) as u8).collect();
            let m = model(&f, &h, &f2);
            if !is_smooth_genus2(&m, &f2) {
                continue;
            }
            let s = frobenius_charpoly(&m, &f2).unwrap();
            let qbar = s.charpoly().reduce_mod(3);
            if qbar == vec![1, 0, 2, 0, 1] {
                // the {2C, 6G, 6H} bucket
                module_curves.push(m);
            }
        }
    }
    assert_eq!(module_curves.len(), 96);
    for (i, m) in module_curves.iter().enumerate() {
        let module = three_torsion_module(m, &f2, 1000 + i as u64).unwrap();
        for k in [1u32, 2, 4, 8] {
            let expected_rank = module.frobenius_raw.pow(k).fixed_space_dim();
            let rank = sylow3_structure(m, &f2, k, 77).unwrap().torsion_rank;
            assert_eq!(rank, expected_rank, "triangle at k={k} on curve {i}");
        }
        // the Gram matrix lies in the invariant-form space: already asserted
        // in construction; re-check the defining equation here
        let g = module.frobenius_raw;
        assert_eq!(
            g.transpose().mul(&module.gram).mul(&g),
            module.gram.neg()
        );
        assert_eq!(module.form_space_dim, 2);
    }

    // determinism across seeds for all counts
    let r1 = enumerate_f2(res, 31415).unwrap();
    let r2 = enumerate_f2(res, 8675309).unwrap();
    assert_eq!(r1.ordinary_classes, r2.ordinary_classes);
    assert_eq!(r1.non_ordinary_classes, r2.non_ordinary_classes);
    // and across worker counts
    let r4 = enumerate_f2_sharded(res, 31415, 4).unwrap();
    assert_eq!(r1.ordinary_classes, r4.ordinary_classes);
    assert_eq!(r1.ordinary_charpolys, r4.ordinary_charpolys);
    c.pass(600);
}

/// Criterion 9: classify_class agrees with the ground-truth conjugacy
/// partition on all 51840 outer elements.
#[test]
fn criterion_9_classification_oracle() {
    let res = resources();
    let c = Criterion::begin("9 (classification oracle)");
    let oracle = signature_oracle(&res.atlas);
    // the signature separates everything except the 6G/6H pair
    assert!(!oracle.separates_all);
    assert_eq!(
        oracle.colliding_labels,
        vec![ClassLabel::SixG, ClassLabel::SixH]
    );
    let mut checked = 0u32;
    for (idx, g) in res.table.elems.iter().enumerate() {
        if res.table.classes[res.table.class_of[idx] as usize].nu != 2 {
            continue;
        }
        let got = classify_class(g, &res.table, &res.atlas).unwrap();
        let truth = res.atlas.label_by_membership(g, &res.table).unwrap();
        assert_eq!(got, truth);
        checked += 1;
    }
    assert_eq!(checked, 51840);
    c.pass(600);
}

/// Supplementary: the ten non-distinguished F3 curves have the stated
/// charpolys and geometric 3-torsion of rank 2, with the rational rank
/// matching the sign of the unit root.
#[test]
fn supplementary_f3_non_distinguished_sylow() {
    let c = Criterion::begin("supplementary (F3 non-distinguished torsion)");
    let f3 = field_make(3, 1).unwrap();
    let mut found: BTreeMap<(i64, i64), u32> = BTreeMap::new();
    for fidx in 0u32..2187 {
        let mut rem = fidx;
        let mut fc = [0u8; 7];
        for co in fc.iter_mut() {
            *co = (rem % 3) as u8;
            rem /= 3;
        }
        let m = model(&fc, &[], &f3);
        if !is_smooth_genus2(&m, &f3) {
            continue;
        }
        let s = frobenius_charpoly(&m, &f3).unwrap();
        if !s.ordinary || s.distinguished {
            continue;
        }
        *found.entry((s.a, s.b)).or_default() += 1;
        // rank over F9 is always 2; over F3 it is 2 exactly when the unit
        // root is +1 (charpolys (x^2 -+ x + 3)^2 and (x^2 -+ 2x + 3)^2)
        let rank9 = sylow3_structure(&m, &f3, 2, 5).unwrap().torsion_rank;
        assert_eq!(rank9, 2);
        // Q = (x^2 + c x + 3)^2 with c = a/2: the unit root is -c mod 3, so
        // the rational 3-torsion has rank 2 exactly when -c = 1 mod 3
        let rank3 = sylow3_structure(&m, &f3, 1, 5).unwrap().torsion_rank;
        let expect3 = if (-s.a / 2).rem_euclid(3) == 1 { 2 } else { 0 };
        assert_eq!(rank3, expect3, "charpoly ({}, {})", s.a, s.b);
    }
    let expected: BTreeMap<(i64, i64), u32> =
        [((-2, 7), 4), ((2, 7), 4), ((-4, 10), 1), ((4, 10), 1)]
            .into_iter()
            .collect();
    assert_eq!(found, expected);
    c.pass(120);
}
