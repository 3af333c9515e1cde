//! The append-only input buffer.

/// An append-only sequence of bytes. Characters are immutable once
/// appended, so text indices are stable for the lifetime of a build.
#[derive(Default, Clone, Debug)]
pub struct Text {
    bytes: Vec<u8>,
}

impl Text {
    pub fn new() -> Self {
        Text { bytes: Vec::new() }
    }

    pub fn with_capacity(cap: usize) -> Self {
        Text {
            bytes: Vec::with_capacity(cap),
        }
    }

    pub fn push(&mut self, c: u8) {
        self.bytes.push(c);
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    #[inline]
    pub fn at(&self, i: u32) -> u8 {
        self.bytes[i as usize]
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }
}

impl From<&[u8]> for Text {
    fn from(b: &[u8]) -> Self {
        Text { bytes: b.to_vec() }
    }
}

impl From<Vec<u8>> for Text {
    fn from(bytes: Vec<u8>) -> Self {
        Text { bytes }
    }
}
