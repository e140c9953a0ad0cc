use moduli_census::algebra::{rat, FieldCtx, Rat};
use moduli_census::census::EllipticCensus;
use moduli_census::store::*;
use moduli_census::strata::{quartic_census_f2, strata_census_g2, CurveModel};
use moduli_census::CensusError;

fn f3_records() -> Vec<CensusCacheRecord> {
    records_g1(&EllipticCensus::new(&FieldCtx::new(3).unwrap()).unwrap()).unwrap()
}

#[test]
fn elliptic_f3_records() {
    let census = EllipticCensus::new(&FieldCtx::new(3).unwrap()).unwrap();
    let records = records_g1(&census).unwrap();
    assert_eq!(records.len(), 8);
    // (#C(F_3), 1/#Aut, j) with j = -1 written as 2
    let mut want = vec![
        (6, rat(1, 2), 2),
        (2, rat(1, 2), 2),
        (3, rat(1, 2), 1),
        (5, rat(1, 2), 1),
        (4, rat(1, 2), 0),
        (4, rat(1, 6), 0),
        (7, rat(1, 6), 0),
        (1, rat(1, 6), 0),
    ];
    let mut got: Vec<(i64, Rat, u32)> = census.records().iter().map(|r| (r.n1, r.mass(), r.j)).collect();
    want.sort();
    got.sort();
    assert_eq!(got, want);
    let mut from_records: Vec<(i64, Rat)> = records.iter().map(|r| (r.counts[0], r.weight.clone())).collect();
    from_records.sort();
    let mut want_nw: Vec<(i64, Rat)> = want.into_iter().map(|(n, w, _)| (n, w)).collect();
    want_nw.sort();
    assert_eq!(from_records, want_nw);
    // supersingular exactly when 3 divides the trace, i.e. j = 0
    for r in &records {
        assert_eq!(r.a_number == 1, (4 - r.counts[0]) % 3 == 0);
        assert_eq!(r.p_rank, 1 - r.a_number);
    }
}

#[test]
fn round_trip_is_identity() {
    let records = f3_records();
    let text = emit_records(&records).unwrap();
    let back = parse_records(&text).unwrap();
    assert_eq!(back, records);
    assert_eq!(emit_records(&back).unwrap(), text);
    assert!(text.contains("\"weight\":\"1/6\""));
}

#[test]
fn ten_thousand_records_reemit_byte_identical() {
    let base = f3_records();
    let mut records = Vec::with_capacity(10_000);
    for i in 0..10_000i64 {
        let mut r = base[(i % 8) as usize].clone();
        r.counts = vec![i];
        r.weight = rat(i + 1, (i % 97) + 1);
        if let CurveModel::Elliptic { a } = &mut r.model {
            a[4] = (i % 3) as u32;
            a[0] = (i / 3 % 3) as u32;
        }
        records.push(r);
    }
    sort_records(&mut records);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.jsonl");
    write_records(&path, &records).unwrap();
    let first = std::fs::read(&path).unwrap();
    let back = read_records(&path).unwrap();
    assert_eq!(back.len(), 10_000);
    assert_eq!(back, records);
    write_records(&path, &back).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn rejects_foreign_schema_and_fields() {
    let text = emit_records(&f3_records()).unwrap();
    let bumped = text.replace("\"schema\":1,", "\"schema\":2,");
    assert!(matches!(parse_records(&bumped), Err(CensusError::Schema { found: 2, expected: 1 })));
    let extra = text.lines().next().unwrap().replacen('{', "{\"extra\":0,", 1);
    assert!(parse_records(&extra).is_err());
    assert!(parse_records("{not json").is_err());
}

#[test]
fn cache_builds_once_then_reads() {
    let dir = tempfile::tempdir().unwrap();
    let k = FieldCtx::new(5).unwrap();
    let first = load_or_build(dir.path(), RecordKind::G1, &k, || records_g1(&EllipticCensus::new(&k)?)).unwrap();
    assert!(cache_path(dir.path(), RecordKind::G1, &k).exists());
    let second = load_or_build(dir.path(), RecordKind::G1, &k, || panic!("cache miss")).unwrap();
    assert_eq!(first, second);
    assert_eq!(total_weight(&second), rat(5, 1));
    // a file for another field is refused
    let k7 = FieldCtx::new(7).unwrap();
    std::fs::copy(cache_path(dir.path(), RecordKind::G1, &k), cache_path(dir.path(), RecordKind::G1, &k7)).unwrap();
    assert!(load_or_build(dir.path(), RecordKind::G1, &k7, || unreachable!()).is_err());
}

#[test]
fn strata_records_keep_mass() {
    for q in [4u64, 5] {
        let k = FieldCtx::new(q).unwrap();
        let census = strata_census_g2(&k).unwrap();
        let records = records_from_strata(&census, &k).unwrap();
        assert_eq!(total_weight(&records), census.total());
        assert_eq!(total_weight(&records), rat((q * q * q) as i64, 1));
        let kind = if q == 4 { RecordKind::G2Char2 } else { RecordKind::G2 };
        assert!(records.iter().all(|r| r.kind == kind && r.genus() == 2));
        assert_eq!(parse_records(&emit_records(&records).unwrap()).unwrap(), records);
    }
    let k2 = FieldCtx::new(2).unwrap();
    let quartics = records_from_strata(&quartic_census_f2().unwrap(), &k2).unwrap();
    assert!(quartics.iter().all(|r| r.kind == RecordKind::Quartic && r.counts.len() == 3));
    assert_eq!(total_weight(&quartics), quartic_census_f2().unwrap().total());
}

#[test]
fn output_independent_of_thread_count() {
    let k = FieldCtx::new(5).unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| emit_records(&records_from_strata(&strata_census_g2(&k).unwrap(), &k).unwrap()).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn report_tsv() {
    let mut r = Report::new(["q", "mass"]);
    for rec in f3_records() {
        r.push([rec.field.q().to_string(), rec.weight.to_string()]).unwrap();
    }
    let text = r.to_tsv().unwrap();
    assert!(text.starts_with("q\tmass\n"));
    assert_eq!(text.lines().count(), 9);
    assert_eq!(Report::from_tsv(&text).unwrap(), r);
}
