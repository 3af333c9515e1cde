//! The canonical plain-text tree serialization.
//!
//! One node per line, indentation encodes depth, children ordered by the
//! first byte of their edge label. Suffix links and record identities are
//! excluded, so trees built under different disciplines (and the
//! brute-force oracle) serialize identically for the same text.

/// Root line of every serialized tree.
pub const ROOT_LINE: &str = "(root)";

/// Render an edge label as printable ASCII, escaping everything else.
pub fn escape_label(label: &[u8]) -> String {
    let mut out = String::with_capacity(label.len());
    for &b in label {
        match b {
            b'\\' => out.push_str("\\\\"),
            0x20..=0x7e => out.push(b as char),
            _ => out.push_str(&format!("\\x{b:02x}")),
        }
    }
    out
}

/// Append one serialized node line.
pub fn push_line(out: &mut String, depth: usize, label: &[u8]) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push_str(&escape_label(label));
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escapes_non_printable_bytes() {
        assert_eq!(escape_label(b"ab c"), "ab c");
        assert_eq!(escape_label(&[0x00, 0xff]), "\\x00\\xff");
        assert_eq!(escape_label(b"a\\b"), "a\\\\b");
    }
}
