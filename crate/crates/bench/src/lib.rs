//! Fixed diagrams shared by the benchmarks.

use rotknot_core::MorseDiagram;

pub const DIAGRAMS: &[(&str, &str)] = &[
    ("trefoil", "cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0"),
    ("figure-eight", "cup 0 / cup 1 / x+ 0 / x- 1 / x+ 0 / x+ 0 / cap 1 / cap 0"),
    ("virtual-trefoil", "cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0"),
    ("chain-2", "cup 0 / cup 0 / v 1 / x+ 0 / v 0 / x+ 1 / cap 0 / cap 0"),
];

/// A `(2, n)` torus braid closure with `n` crossings.
pub fn torus(n: usize) -> MorseDiagram {
    let mut words = vec!["cup 0".to_string(), "cup 1".to_string()];
    words.extend((0..n).map(|_| "x+ 0".to_string()));
    words.push("cap 1 / cap 0".into());
    MorseDiagram::parse(&words.join(" / ")).expect("well-formed torus word")
}

pub fn diagrams() -> Vec<(&'static str, MorseDiagram)> {
    DIAGRAMS.iter().map(|(n, s)| (*n, MorseDiagram::parse(s).expect("well-formed"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        assert_eq!(diagrams().len(), DIAGRAMS.len());
        assert_eq!(torus(3).crossing_count(), 3);
    }
}
