use super::{CharacterTable, RepsError};
use crate::coxeter::CoxeterSystem;

/// Carter's labels for `F4` by degree and `b`-invariant. Characters sharing
/// both are told apart by their value on one class, named by a word.
const LABELS: [(i64, usize, Option<(&str, i64)>, &str); 25] = [
    (1, 0, None, "1_1"),
    (1, 12, Some(("1", 1)), "1_2"),
    (1, 12, Some(("1", -1)), "1_3"),
    (1, 24, None, "1_4"),
    (2, 4, Some(("1", 2)), "2_1"),
    (2, 4, Some(("3", 2)), "2_3"),
    (2, 16, Some(("1", -2)), "2_2"),
    (2, 16, Some(("3", -2)), "2_4"),
    (4, 8, None, "4_1"),
    (4, 1, None, "4_2"),
    (4, 7, Some(("1", 2)), "4_3"),
    (4, 7, Some(("1", -2)), "4_4"),
    (4, 13, None, "4_5"),
    (6, 6, Some(("13", 2)), "6_1"),
    (6, 6, Some(("13", -2)), "6_2"),
    (8, 3, Some(("1", 4)), "8_1"),
    (8, 3, Some(("3", 4)), "8_3"),
    (8, 9, Some(("1", -4)), "8_2"),
    (8, 9, Some(("3", -4)), "8_4"),
    (9, 2, None, "9_1"),
    (9, 6, Some(("1", 3)), "9_2"),
    (9, 6, Some(("1", -3)), "9_3"),
    (9, 10, None, "9_4"),
    (12, 4, None, "12_1"),
    (16, 5, None, "16_1"),
];

/// Replace generated `phi{d},{b}` labels by Carter's.
pub(crate) fn relabel(sys: &CoxeterSystem, table: &mut CharacterTable) -> Result<(), RepsError> {
    let class_map = sys.class_map(&table.classes);
    let value = |row: &[i64], word: &str| -> Result<i64, RepsError> {
        let w = sys.parse_word(word).map_err(|e| RepsError::Generate(e.to_string()))?;
        Ok(row[class_map[w]])
    };
    let mut out = Vec::with_capacity(table.labels.len());
    for (label, row) in table.labels.iter().zip(&table.values) {
        let rest = label.trim_start_matches("phi").trim_end_matches('\'');
        let (d, b) = rest
            .split_once(',')
            .and_then(|(d, b)| Some((d.parse::<i64>().ok()?, b.parse::<usize>().ok()?)))
            .ok_or_else(|| RepsError::Generate(format!("unexpected label {label}")))?;
        let mut found = None;
        for &(ld, lb, disc, name) in &LABELS {
            if ld != d || lb != b {
                continue;
            }
            let matches = match disc {
                None => true,
                Some((word, v)) => value(row, word)? == v,
            };
            if matches {
                found = Some(name);
            }
        }
        let name = found.ok_or_else(|| RepsError::Generate(format!("no F4 label for degree {d}, b = {b}")))?;
        if out.iter().any(|l: &String| l == name) {
            return Err(RepsError::Generate(format!("F4 label {name} assigned twice")));
        }
        out.push(name.to_string());
    }
    table.labels = out;
    Ok(())
}
