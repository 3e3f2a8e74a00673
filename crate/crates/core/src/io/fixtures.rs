//! The shipped example fans, embedded from `fixtures/`.

use super::fan_doc::{parse_fan, FanDocument};
use crate::error::{Error, Result};

pub const FIXTURES: &[(&str, &str)] = &[
    ("p1", include_str!("../../../../fixtures/p1.json")),
    ("p2", include_str!("../../../../fixtures/p2.json")),
    ("hirzebruch-a", include_str!("../../../../fixtures/hirzebruch-a.json")),
    ("ex-1.100a", include_str!("../../../../fixtures/ex-1.100a.json")),
    ("ex-1.100b", include_str!("../../../../fixtures/ex-1.100b.json")),
    ("ex-1.230", include_str!("../../../../fixtures/ex-1.230.json")),
    ("ex-1.400a", include_str!("../../../../fixtures/ex-1.400a.json")),
    ("ex-1.400b", include_str!("../../../../fixtures/ex-1.400b.json")),
    ("ex-3.290", include_str!("../../../../fixtures/ex-3.290.json")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

pub fn fixture(name: &str) -> Result<FanDocument> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Parse(format!("no fixture named `{name}`")))?;
    Ok(parse_fan(text)?.document)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples::all_examples;

    #[test]
    fn fixtures_match_constructors() {
        let ex = all_examples();
        assert_eq!(fixture_names(), ex.iter().map(|(n, _)| *n).collect::<Vec<_>>());
        for (name, f) in ex {
            let g = fixture(name).unwrap().to_fan().unwrap();
            assert_eq!(g.rays(), f.rays(), "{name}");
            assert_eq!(g.max_cones(), f.max_cones(), "{name}");
        }
        let p2 = fixture("p2").unwrap();
        assert_eq!((p2.rays.len(), p2.max_cones.len()), (3, 3));
    }
}
