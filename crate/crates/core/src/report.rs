use serde::Serialize;
use serde_json::Value;

/// Outcome of an exhaustive verifier.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub datum: String,
    pub cases: u64,
    pub counterexamples: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reading: Option<String>,
    pub passed: bool,
}

impl LemmaReport {
    pub fn new(lemma: &str, datum: &str, cases: u64, counterexamples: Vec<Value>) -> Self {
        let passed = counterexamples.is_empty();
        LemmaReport {
            lemma: lemma.to_string(),
            datum: datum.to_string(),
            cases,
            counterexamples,
            reading: None,
            passed,
        }
    }

    pub fn with_reading(mut self, reading: &str) -> Self {
        self.reading = Some(reading.to_string());
        self
    }

    /// Folds several reports of the same lemma into one.
    pub fn merge(lemma: &str, datum: &str, parts: Vec<LemmaReport>) -> Self {
        let cases = parts.iter().map(|r| r.cases).sum();
        let reading = parts.iter().find_map(|r| r.reading.clone());
        let cx = parts.into_iter().flat_map(|r| r.counterexamples).collect();
        let mut out = LemmaReport::new(lemma, datum, cases, cx);
        out.reading = reading;
        out
    }
}

/// Every integer vector in `[lo, hi]^len`, in lexicographic order.
pub fn box_points(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    ranged_points(&vec![(lo, hi); len])
}

/// Every integer vector `v` with `0 <= v_i <= upper_i`, in lexicographic order.
pub fn grid_points(upper: &[i64]) -> Vec<Vec<i64>> {
    ranged_points(&upper.iter().map(|&u| (0, u)).collect::<Vec<_>>())
}

fn ranged_points(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boxes() {
        assert_eq!(box_points(0, 0, 3), vec![Vec::<i64>::new()]);
        assert_eq!(box_points(2, 0, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
