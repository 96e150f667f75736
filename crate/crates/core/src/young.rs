//! Text rendering of partition profiles as Young diagrams: one row per
//! block, left-aligned boxes, optional per-cell labels.

use std::collections::BTreeMap;

use crate::family::PartitionProfile;

/// Cell labels keyed by 1-based `(row, column)`.
pub type CellLabels = BTreeMap<(usize, usize), String>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DiagramStyle {
    /// `+`, `-` and `|` only.
    Ascii,
    /// Unicode box-drawing characters.
    #[default]
    Box,
}

/// Renders `profile` as a Young diagram. Every line ends with `\n`; an
/// empty profile renders as the empty string.
pub fn render_young(
    profile: &PartitionProfile,
    labels: Option<&CellLabels>,
    style: DiagramStyle,
) -> String {
    let rows = profile.sizes();
    if rows.is_empty() {
        return String::new();
    }
    let widest_label = labels
        .into_iter()
        .flat_map(|l| l.values())
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(0);
    let cell = (widest_label + 2).max(3);

    let width_at = |r: isize| -> usize {
        if r < 0 {
            0
        } else {
            rows.get(r as usize).copied().unwrap_or(0)
        }
    };

    let mut out = String::new();
    for boundary in 0..=rows.len() {
        let above = width_at(boundary as isize - 1);
        let below = width_at(boundary as isize);
        let span = above.max(below);
        let mut line = String::new();
        for c in 0..=span {
            let up = c <= above && above > 0;
            let down = c <= below && below > 0;
            let left = c >= 1;
            let right = c < span;
            line.push(junction(style, up, down, left, right));
            if right {
                let h = if style == DiagramStyle::Ascii {
                    '-'
                } else {
                    '─'
                };
                line.extend(std::iter::repeat_n(h, cell));
            }
        }
        out.push_str(&line);
        out.push('\n');

        if boundary < rows.len() {
            let v = if style == DiagramStyle::Ascii {
                '|'
            } else {
                '│'
            };
            let mut line = String::new();
            line.push(v);
            for col in 1..=rows[boundary] {
                let text = labels
                    .and_then(|l| l.get(&(boundary + 1, col)))
                    .map(String::as_str)
                    .unwrap_or("");
                let len = text.chars().count();
                let pad_left = (cell - len) / 2;
                line.extend(std::iter::repeat_n(' ', pad_left));
                line.push_str(text);
                line.extend(std::iter::repeat_n(' ', cell - len - pad_left));
                line.push(v);
            }
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

fn junction(style: DiagramStyle, up: bool, down: bool, left: bool, right: bool) -> char {
    if style == DiagramStyle::Ascii {
        return '+';
    }
    match (up, down, left, right) {
        (false, true, false, true) => '┌',
        (false, true, true, false) => '┐',
        (true, false, false, true) => '└',
        (true, false, true, false) => '┘',
        (true, true, false, true) => '├',
        (true, true, true, false) => '┤',
        (false, true, true, true) => '┬',
        (true, false, true, true) => '┴',
        (true, true, true, true) => '┼',
        (true, true, false, false) => '│',
        (false, false, true, true) => '─',
        _ => ' ',
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(s: &[usize]) -> PartitionProfile {
        PartitionProfile::new(s.to_vec()).unwrap()
    }

    #[test]
    fn two_one_ascii() {
        let got = render_young(&profile(&[2, 1]), None, DiagramStyle::Ascii);
        let want = "\
+---+---+
|   |   |
+---+---+
|   |
+---+
";
        assert_eq!(got, want);
    }

    #[test]
    fn column_of_three() {
        let got = render_young(&profile(&[1, 1, 1]), None, DiagramStyle::Ascii);
        assert_eq!(got.lines().count(), 7);
        assert!(got.lines().all(|l| l.chars().count() == 5));
    }

    #[test]
    fn labelled_cell_keeps_shape() {
        let mut labels = CellLabels::new();
        labels.insert((1, 3), "t2".to_owned());
        let got = render_young(&profile(&[3, 1]), Some(&labels), DiagramStyle::Ascii);
        let want = "\
+----+----+----+
|    |    | t2 |
+----+----+----+
|    |
+----+
";
        assert_eq!(got, want);
    }

    #[test]
    fn box_drawing_junctions() {
        let got = render_young(&profile(&[2, 1]), None, DiagramStyle::Box);
        let want = "\
┌───┬───┐
│   │   │
├───┼───┘
│   │
└───┘
";
        assert_eq!(got, want);
    }

    #[test]
    fn empty_profile_renders_nothing() {
        assert_eq!(render_young(&profile(&[]), None, DiagramStyle::Box), "");
    }
}
