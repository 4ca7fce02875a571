use super::MidiError;

/// Exclusive upper bound of a four-byte variable-length quantity.
pub const VLQ_LIMIT: u64 = 1 << 28;

pub fn encode_vlq(value: u64) -> Result<Vec<u8>, MidiError> {
    if value >= VLQ_LIMIT {
        return Err(MidiError::VlqRange(value));
    }
    let mut out = vec![(value & 0x7F) as u8];
    let mut rest = value >> 7;
    while rest > 0 {
        out.push(0x80 | (rest & 0x7F) as u8);
        rest >>= 7;
    }
    out.reverse();
    Ok(out)
}

/// Decodes one quantity from the front of `bytes`, returning it with the
/// number of bytes consumed. `None` on truncation or more than four bytes.
pub fn decode_vlq(bytes: &[u8]) -> Option<(u64, usize)> {
    let mut value = 0u64;
    for (i, &b) in bytes.iter().take(4).enumerate() {
        value = (value << 7) | u64::from(b & 0x7F);
        if b & 0x80 == 0 {
            return Some((value, i + 1));
        }
    }
    None
}
