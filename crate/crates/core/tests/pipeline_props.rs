use fuzzylos::defaults::{default_fis, default_regions};
use fuzzylos::pipeline::{
    export_surface, generate_synthetic, ingest, write_measurements, IngestMode, Measurement, PipelineError,
};
use fuzzylos::{evaluate, LosLevel};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = String> {
    prop_oneof![
        (0.0..9000.0f64).prop_map(|v| v.to_string()),
        (-100.0..0.0f64).prop_map(|v| v.to_string()),
        Just("NaN".to_string()),
        Just("inf".to_string()),
        Just(String::new()),
        "[a-z0-9:.\"-]{0,6}",
    ]
}

fn row() -> impl Strategy<Value = String> {
    prop::collection::vec(field(), 0..6).prop_map(|f| f.join(","))
}

proptest! {
    #[test]
    fn ingest_accounts_for_every_row(rows in prop::collection::vec(row(), 0..40), labels in any::<bool>()) {
        let header = if labels { "timestamp,speed_kmh,flow_vph,los" } else { "timestamp,speed_kmh,flow_vph" };
        let text = std::iter::once(header.to_string()).chain(rows).collect::<Vec<_>>().join("\n");
        let got = ingest(text.as_bytes(), IngestMode::Partial).unwrap();
        prop_assert_eq!(got.measurements.len() + got.errors.len(), got.rows);
        for m in &got.measurements {
            prop_assert!(m.speed_kmh.is_finite() && m.speed_kmh >= 0.0);
            prop_assert!(m.flow_vph.is_finite() && m.flow_vph >= 0.0);
        }
        for e in &got.errors {
            prop_assert!(e.line >= 2);
        }
        let strict = ingest(text.as_bytes(), IngestMode::AllOrNothing);
        prop_assert_eq!(strict.is_ok(), got.errors.is_empty());
    }

    #[test]
    fn ingest_survives_random_bytes(bytes in prop::collection::vec(any::<u8>(), 0..300)) {
        if let Ok(got) = ingest(bytes.as_slice(), IngestMode::Partial) {
            prop_assert_eq!(got.measurements.len() + got.errors.len(), got.rows);
        }
    }

    #[test]
    fn written_measurements_read_back(points in prop::collection::vec((0.0..80.0f64, 0.0..6000.0f64, prop::option::of(1u8..=6)), 0..30)) {
        let data: Vec<Measurement> = points
            .iter()
            .enumerate()
            .map(|(i, &(s, f, l))| Measurement {
                label: l.and_then(LosLevel::new),
                ..Measurement::new(format!("t{i}"), s, f)
            })
            .collect();
        let mut buf = Vec::new();
        write_measurements(&mut buf, &data, true).unwrap();
        let back = ingest(buf.as_slice(), IngestMode::AllOrNothing).unwrap();
        prop_assert_eq!(back.measurements, data);
    }

    #[test]
    fn synthetic_is_deterministic(seed in any::<u64>(), n in 1usize..400) {
        let model = default_regions().unwrap();
        let a = generate_synthetic(&model, n, seed).unwrap();
        prop_assert_eq!(a.len(), n);
        prop_assert_eq!(&a, &generate_synthetic(&model, n, seed).unwrap());
        for m in &a {
            prop_assert!(model.oracle_label(m.flow_vph, m.speed_kmh).is_ok());
            prop_assert!(m.label.is_none());
        }
    }

    #[test]
    fn report_arithmetic(seed in any::<u64>(), n in 1usize..400) {
        let fis = default_fis().unwrap();
        let model = default_regions().unwrap();
        let data = generate_synthetic(&model, n, seed).unwrap();
        let r = evaluate(&fis, &model, &data, 0.05).unwrap();
        prop_assert_eq!(r.points, n);
        prop_assert_eq!(r.unlabeled + r.anomalies + r.total + r.errors.len(), n);
        prop_assert_eq!(r.flagged.len(), r.anomalies);
        let all: usize = r.confusion.iter().flatten().sum();
        let diagonal: usize = (0..6).map(|i| r.confusion[i][i]).sum();
        prop_assert_eq!(all, r.total);
        prop_assert_eq!(diagonal, r.total - r.mismatches);
        if let Some(a) = r.accuracy() {
            prop_assert_eq!(a, (r.total - r.mismatches) as f64 / r.total as f64);
        }
        prop_assert_eq!(&r, &evaluate(&fis, &model, &data, 0.05).unwrap());
    }
}

#[test]
fn synthetic_points_stay_near_regions() {
    let model = default_regions().unwrap();
    let flow_margin = model.flow_domain().span() * 0.01;
    let speed_margin = model.speed_domain().span() * 0.01;
    let data = generate_synthetic(&model, 3825, 7).unwrap();
    let mut outside = 0;
    for m in &data {
        let near = model.regions().iter().any(|r| {
            r.rect.flow.lo() - flow_margin <= m.flow_vph
                && m.flow_vph <= r.rect.flow.hi() + flow_margin
                && r.rect.speed.lo() - speed_margin <= m.speed_kmh
                && m.speed_kmh <= r.rect.speed.hi() + speed_margin
        });
        assert!(near, "{m:?}");
        if model.oracle_label(m.flow_vph, m.speed_kmh).unwrap().is_none() {
            outside += 1;
        }
    }
    // only jittered points can leave the rectangles
    assert!(outside <= (3825.0f64 * 0.02).round() as usize);
}

#[test]
fn timestamps_follow_a_fifteen_minute_cadence() {
    let data = generate_synthetic(&default_regions().unwrap(), 3, 1).unwrap();
    let stamps: Vec<&str> = data.iter().map(|m| m.timestamp.as_str()).collect();
    assert_eq!(
        stamps,
        ["2023-01-02T00:00:00", "2023-01-02T00:15:00", "2023-01-02T00:30:00"]
    );
}

#[test]
fn single_point_lies_in_a_region() {
    let model = default_regions().unwrap();
    let data = generate_synthetic(&model, 1, 42).unwrap();
    assert!(model
        .oracle_label(data[0].flow_vph, data[0].speed_kmh)
        .unwrap()
        .is_some());
}

#[test]
fn zero_points_rejected() {
    assert!(matches!(
        generate_synthetic(&default_regions().unwrap(), 0, 1),
        Err(PipelineError::InvalidCount)
    ));
}

#[test]
fn labels_override_the_oracle() {
    let fis = default_fis().unwrap();
    let model = default_regions().unwrap();
    let mut m = Measurement::new("t", 70.0, 300.0);
    m.label = LosLevel::new(4);
    let r = evaluate(&fis, &model, &[m], 0.05).unwrap();
    assert_eq!(r.mismatches, 1);
    assert_eq!(r.confusion[3][0], 1);
}

#[test]
fn perfect_agreement() {
    let fis = default_fis().unwrap();
    let model = default_regions().unwrap();
    let data: Vec<Measurement> = (0..100)
        .map(|i| Measurement::new(format!("t{i}"), 70.0, 3.0 * i as f64))
        .collect();
    let r = evaluate(&fis, &model, &data, 0.05).unwrap();
    assert_eq!(r.accuracy(), Some(1.0));
    assert_eq!(r.confusion[0][0], 100);
}

#[test]
fn surface_has_plateau_values() {
    let fis = default_fis().unwrap();
    let cells = export_surface(&fis, 50, 50).unwrap();
    assert_eq!(cells.len(), 2500);
    assert!(cells
        .iter()
        .all(|c| c.raw_los == 0.0 || (1.0..=6.0).contains(&c.raw_los)));
    // flow 0, speed 80: only (Very_Low, Very_High) fires
    assert_eq!(cells[49].raw_los, 1.0);
}
