use mzv_core::combinatorics::SetPartition;
use mzv_core::identities::{
    example1_table, format_example1_table, permutations_with_multiplicity, verify, zeta_part, Context, Flavor,
    Identity, IdentityReport, Params, PartFlavor, ShRoute, VerifyConfig,
};
use mzv_core::index_algebra::{Index, MzvSymbolPoly, SymbolExpr};
use mzv_core::ring::Ring;
use mzv_core::series_reg::TPoly;
use mzv_core::Error;

fn idx(s: &str) -> Index {
    s.parse().unwrap()
}

fn z(s: &str) -> SymbolExpr {
    SymbolExpr::zeta(&idx(s)).unwrap()
}

fn ctx() -> Context {
    Context::new(VerifyConfig::default()).unwrap()
}

#[test]
fn zeta_part_examples() {
    let p12: SetPartition = "12".parse().unwrap();
    let p1_2: SetPartition = "1|2".parse().unwrap();
    assert_eq!(zeta_part(&idx("1,1"), &p12, PartFlavor::Harm).unwrap(), TPoly::constant(z("2")));
    assert!(zeta_part(&idx("1,1"), &p12, PartFlavor::Sh).unwrap().is_zero());
    for f in [PartFlavor::Harm, PartFlavor::Sh] {
        let v = zeta_part(&idx("2,3"), &p1_2, f).unwrap();
        assert_eq!(v, TPoly::constant(z("2") * z("3")));
    }
    let wrong: SetPartition = "1|2|3".parse().unwrap();
    assert!(matches!(zeta_part(&idx("1,1"), &wrong, PartFlavor::Harm), Err(Error::Domain(_))));
}

#[test]
fn symmetric_and_partition_sum_examples() {
    let c = ctx();
    for k in 2..=4 {
        let k1 = Index::new(vec![1, k]).unwrap();
        let expected = TPoly::constant(SymbolExpr::zeta(&Index::new(vec![k + 1]).unwrap()).unwrap())
            + TPoly::monomial(SymbolExpr::zeta(&Index::new(vec![k]).unwrap()).unwrap(), 1);
        assert_eq!(c.partition_sum_symbolic(&k1, Flavor::StarSh).unwrap(), expected);
        let lhs = c.symmetric_sum(&k1, Flavor::StarSh).unwrap();
        let rhs = c.evaluate(&expected).unwrap();
        for i in 0..2 {
            assert!(lhs.coeff(i).distance(&rhs.coeff(i)) <= lhs.coeff(i).rad() + rhs.coeff(i).rad());
        }
    }
    for f in Flavor::ALL {
        let v = c.symmetric_sum_symbolic(&idx("5"), f, ShRoute::Word).unwrap();
        assert_eq!(v, TPoly::constant(z("5")), "{f}");
    }
    // 2ζ*_harm(1,1;T) = T² + ζ(2)
    let v = c.symmetric_sum_symbolic(&idx("1,1"), Flavor::StarHarm, ShRoute::Word).unwrap();
    assert_eq!(v, TPoly::monomial(SymbolExpr::one(), 2) + TPoly::constant(z("2")));
    assert_eq!(
        c.partition_sum_symbolic(&Index::ones(3), Flavor::StarSh).unwrap(),
        MzvSymbolPoly::monomial(SymbolExpr::one(), 3)
    );
}

#[test]
fn permutation_counts() {
    let total: u64 = permutations_with_multiplicity(&idx("1,1,2,3")).iter().map(|p| p.1).sum();
    assert_eq!(total, 24);
    assert_eq!(permutations_with_multiplicity(&idx("1,1,2,3")).len(), 12);
}

#[test]
fn verify_spec_examples() {
    let c = ctx();
    let r = verify(&c, Identity::Theorem1, &Params::index("2,3").unwrap());
    assert!(r.pass, "{r}");
    assert_eq!(r.coefficients.len(), 1);
    let cor = Params { k: Some(2), r: Some(3), ..Default::default() };
    let r = verify(&c, Identity::Corollary1, &cor);
    assert!(r.pass, "{r}");
    assert_eq!(r.coefficients.len(), 3);
    assert!(r.coefficients[0].lhs.starts_with("1.0823232337"), "ζ(4): {}", r.coefficients[0].lhs);
    assert!(r.coefficients[2].rhs.starts_with("0.822467033"), "ζ(2)/2: {}", r.coefficients[2].rhs);
    let r = verify(&c, Identity::RemarkBell, &Params::r(6));
    assert!(r.pass && r.method == "exact", "{r}");
    assert_eq!(r.coefficients[0].lhs, "720");
    let r = verify(&c, Identity::Theorem1, &Params::index("1,2").unwrap());
    assert!(r.pass, "{r}");
}

#[test]
fn every_identity_runs_with_reasonable_params() {
    let c = ctx();
    for id in Identity::ALL {
        let p = Params {
            index: Some(idx("1,2,1")),
            k: Some(3),
            l: Some(2),
            r: Some(4),
            display: Some(2),
            ..Default::default()
        };
        let r = verify(&c, id, &p);
        assert!(r.pass, "{r}");
        assert_eq!(id.name().parse::<Identity>().unwrap(), id);
    }
    assert!("nope".parse::<Identity>().is_err());
}

#[test]
fn shuffle_routes_agree_and_are_flagged() {
    let c = ctx();
    for route in [ShRoute::Word, ShRoute::Rho] {
        let p = Params { index: Some(idx("1,1,2")), route: Some(route), ..Default::default() };
        let r = verify(&c, Identity::ShuffleMzv, &p);
        assert!(r.pass, "{r}");
        assert!(r.note.as_deref().unwrap().contains("external"));
    }
}

#[test]
fn errors_are_reported_not_passed() {
    let c = Context::new(VerifyConfig { max_perm_depth: 3, ..Default::default() }).unwrap();
    let r = verify(&c, Identity::Theorem1, &Params::index("1,1,1,2").unwrap());
    assert!(!r.pass);
    assert!(r.error.as_deref().unwrap().contains("capacity"), "{r}");

    let r = verify(&c, Identity::Corollary1, &Params::r(2));
    assert!(!r.pass && r.error.is_some());

    let c = Context::new(VerifyConfig { series_order: Some(1), ..Default::default() }).unwrap();
    let r = verify(&c, Identity::Prop3Eq1, &Params::r(3));
    assert!(!r.pass && r.error.as_deref().unwrap().contains("series order"), "{r}");

    let c = Context::new(VerifyConfig { tolerance: Some(1e-60), ..Default::default() }).unwrap();
    let r = verify(&c, Identity::RemarkStar, &Params::r(3));
    assert!(!r.pass, "bounds above tolerance must fail: {r}");
    assert!(r.note.as_deref().unwrap().contains("exceeds tolerance"));

    assert!(Context::new(VerifyConfig { tolerance: Some(-1.0), ..Default::default() }).is_err());
}

#[test]
fn report_json_round_trip_is_byte_identical() {
    let c = ctx();
    for (id, p) in [
        (Identity::Theorem1, Params::index("1,1,3").unwrap()),
        (Identity::Prop1, Params { r: Some(4), b: Some(vec![3, 4]), ..Default::default() }),
        (Identity::Theorem1, Params::index("1,1,1,1,1,1").unwrap()),
    ] {
        let json = verify(&c, id, &p).to_json();
        let back = IdentityReport::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
    }
}

#[test]
fn worked_decomposition_is_listed() {
    let c = ctx();
    let p = Params { r: Some(4), b: Some(vec![3, 4]), ..Default::default() };
    let r = verify(&c, Identity::Prop1, &p);
    assert!(r.pass, "{r}");
    let note = r.note.unwrap();
    assert!(note.contains("P'_{3,4}({1,2,3}) = {"), "{note}");
}

#[test]
fn worked_example_table_rows() {
    let c = ctx();
    let reports = example1_table(&c, &[2, 3], &[2, 3]).unwrap();
    assert_eq!(reports.len(), 2 + 4 + 2);
    assert!(reports.iter().all(|r| r.pass));
    // display 3 with k = 2: ζ(2)T² + 2ζ(3)T + 2ζ(4)
    let row3 = reports.iter().find(|r| r.params["display"] == "3" && r.params["k"] == "2").unwrap();
    assert!(row3.coefficients[1].rhs.starts_with("2.404113806"));
    // display 2 with k = l = 2: T coefficient ζ(2)² + ζ(4)
    let row2 = reports
        .iter()
        .find(|r| r.params["display"] == "2" && r.params["k"] == "2" && r.params["l"] == "2")
        .unwrap();
    assert!(row2.coefficients[1].rhs.starts_with("3.788131317"), "{}", row2.coefficients[1].rhs);
    let text = format_example1_table(&reports);
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 8);
    assert!(example1_table(&c, &[1], &[2]).is_err());
}

#[test]
fn mismatched_sides_are_detected() {
    let c = ctx();
    // the harmonic symmetric sum pairs with c, not c*: ζ(2,3) + ζ(3,2) = ζ(2)ζ(3) − ζ(5)
    let k = idx("2,3");
    let lhs = c.symmetric_sum(&k, Flavor::Harm).unwrap();
    let right = c.partition_sum(&k, Flavor::Harm).unwrap();
    let wrong = c.partition_sum(&k, Flavor::StarHarm).unwrap();
    let (a, b) = (lhs.coeff(0), right.coeff(0));
    assert!(a.distance(&b) <= a.rad() + b.rad());
    let w = wrong.coeff(0);
    assert!(a.distance(&w) > 2.0, "2ζ(5) apart");
    // c* against H_harm on 1_3 is not T^3
    let p = c.partition_sum_symbolic(&Index::ones(3), Flavor::StarHarm).unwrap();
    assert_ne!(p, TPoly::monomial(SymbolExpr::one(), 3));
}
