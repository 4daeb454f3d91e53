use galois_atlas::algebra::{int, RatFunc};
use galois_atlas::atlas::{validate_atlas, Atlas};
use galois_atlas::diophantine::place_tables;

#[test]
fn jmaps_and_lines_round_trip() {
    let atlas = Atlas::embedded();
    for r in &atlas.records {
        let back: RatFunc = r.jmap.to_string().parse().unwrap();
        assert_eq!(back, r.jmap, "{}", r.label);
    }
    let text: String = atlas.records.iter().map(|r| r.to_line() + "\n").collect();
    for (line, r) in text.lines().zip(&atlas.records) {
        assert!(line.starts_with(&r.label));
    }
}

#[test]
fn special_j_lists() {
    let atlas = Atlas::embedded();
    assert_eq!(atlas.exceptional_j.len(), 6);
    assert_eq!(atlas.cm_j.len(), 13);
    for j in &atlas.exceptional_j {
        assert!(!atlas.cm_j.contains(j));
        assert!(atlas.is_exceptional(j));
    }
    assert!(atlas.is_cm(&int(0)) && atlas.is_cm(&int(1728)));
}

#[test]
fn embedded_atlas_validates() {
    let atlas = Atlas::embedded();
    let report = validate_atlas(atlas);
    assert!(report.ok(), "{:?}", report.first_failure());
    assert_eq!(atlas.records.iter().filter(|r| !r.auxiliary).count(), 12);
}

#[test]
fn auxiliary_map_is_pinned_by_its_table() {
    let atlas = Atlas::embedded();
    let t = place_tables().into_iter().find(|t| t.right == "5.15.0.1").unwrap();
    assert!(t.verify(atlas).unwrap().ok());

    let mut broken = atlas.clone();
    let r = broken.records.iter_mut().find(|r| r.label == "5.15.0.1").unwrap();
    r.jmap = "(t + 5)^3/t".parse().unwrap();
    assert!(!t.verify(&broken).unwrap().ok());
}
