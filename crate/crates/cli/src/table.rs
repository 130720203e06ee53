//! Plain-text tables of `ι_q(z)` values.

/// Entries per row.
pub const ROW_WIDTH: usize = 18;

/// One table entry: the value and whether `z` is a fixed residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub value: u64,
    pub fixed: bool,
}

/// Rows of [`ROW_WIDTH`] space-separated values, fixed entries as `[v]`
/// when `mark` is set.
pub fn render(entries: &[Entry], mark: bool) -> String {
    let mut out = String::new();
    for row in entries.chunks(ROW_WIDTH) {
        let cells: Vec<String> = row
            .iter()
            .map(|e| {
                if mark && e.fixed {
                    format!("[{}]", e.value)
                } else {
                    e.value.to_string()
                }
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Inverse of [`render`].
pub fn parse(text: &str) -> Option<Vec<Entry>> {
    text.split_whitespace()
        .map(|cell| match cell.strip_prefix('[').and_then(|c| c.strip_suffix(']')) {
            Some(inner) => inner.parse().ok().map(|value| Entry { value, fixed: true }),
            None => cell.parse().ok().map(|value| Entry { value, fixed: false }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        let entries: Vec<Entry> = (0..20)
            .map(|v| Entry { value: v * 3, fixed: v % 7 == 0 })
            .collect();
        let text = render(&entries, true);
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("[0] 3 6"));
        assert_eq!(parse(&text).unwrap(), entries);
        assert!(!render(&entries, false).contains('['));
    }
}
