//! A standalone Standard MIDI File reader used as a test oracle. It shares
//! no code with the writer and accepts running status and note-on velocity
//! 0 so that it does not simply mirror the writer's own choices.

#![allow(dead_code)]

use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParsedNote {
    pub onset: u64,
    pub channel: u8,
    pub pitch: u8,
    pub duration: u64,
    pub velocity: u8,
}

#[derive(Clone, Debug, Default)]
pub struct ParsedSmf {
    pub format: u16,
    pub division: u16,
    pub tracks: usize,
    pub tempos: Vec<(u64, u32)>,
    /// (channel, program) pairs with their track index and tick.
    pub programs: Vec<(usize, u64, u8, u8)>,
    pub notes: Vec<ParsedNote>,
    pub note_ons: BTreeMap<(u8, u8), usize>,
    pub note_offs: BTreeMap<(u8, u8), usize>,
    /// Channels whose notes appear in each track.
    pub track_channels: Vec<Vec<u8>>,
}

impl ParsedSmf {
    pub fn notes_on(&self, channel: u8) -> Vec<ParsedNote> {
        self.notes
            .iter()
            .copied()
            .filter(|n| n.channel == channel)
            .collect()
    }
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn byte(&mut self) -> Result<u8, String> {
        let b = *self
            .data
            .get(self.pos)
            .ok_or_else(|| format!("unexpected end at byte {}", self.pos))?;
        self.pos += 1;
        Ok(b)
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], String> {
        if self.pos + n > self.data.len() {
            return Err(format!("need {n} bytes at {}", self.pos));
        }
        let s = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u16(&mut self) -> Result<u16, String> {
        let s = self.take(2)?;
        Ok((u16::from(s[0]) << 8) | u16::from(s[1]))
    }

    fn u32(&mut self) -> Result<u32, String> {
        let s = self.take(4)?;
        Ok(s.iter().fold(0u32, |acc, &b| (acc << 8) | u32::from(b)))
    }

    fn varlen(&mut self) -> Result<u64, String> {
        let mut v = 0u64;
        for i in 0..4 {
            let b = self.byte()?;
            if i == 0 && b == 0x80 {
                return Err("non-minimal variable-length quantity".into());
            }
            v = (v << 7) | u64::from(b & 0x7F);
            if b & 0x80 == 0 {
                return Ok(v);
            }
        }
        Err("variable-length quantity longer than 4 bytes".into())
    }
}

/// Decodes one variable-length quantity; returns value and length.
pub fn read_varlen(bytes: &[u8]) -> Result<(u64, usize), String> {
    let mut r = Reader {
        data: bytes,
        pos: 0,
    };
    let v = r.varlen()?;
    Ok((v, r.pos))
}

pub fn parse_smf(data: &[u8]) -> Result<ParsedSmf, String> {
    let mut r = Reader { data, pos: 0 };
    if r.take(4)? != b"MThd" {
        return Err("missing MThd".into());
    }
    if r.u32()? != 6 {
        return Err("header length is not 6".into());
    }
    let mut out = ParsedSmf {
        format: r.u16()?,
        ..ParsedSmf::default()
    };
    let ntracks = r.u16()? as usize;
    out.division = r.u16()?;
    if out.division & 0x8000 != 0 {
        return Err("SMPTE division not expected".into());
    }

    let mut open: BTreeMap<(u8, u8), Vec<(u64, u8)>> = BTreeMap::new();
    for t in 0..ntracks {
        if r.take(4)? != b"MTrk" {
            return Err(format!("track {t}: missing MTrk"));
        }
        let len = r.u32()? as usize;
        let body = r.take(len)?;
        let mut tr = Reader { data: body, pos: 0 };
        let mut tick = 0u64;
        let mut status: Option<u8> = None;
        let mut ended = false;
        let mut channels = Vec::new();
        while tr.pos < body.len() {
            if ended {
                return Err(format!("track {t}: data after end-of-track"));
            }
            tick += tr.varlen()?;
            let first = tr.byte()?;
            let (st, data1) = if first & 0x80 != 0 {
                (first, None)
            } else {
                (
                    status.ok_or_else(|| format!("track {t}: running status without status"))?,
                    Some(first),
                )
            };
            match st {
                0xFF => {
                    let ty = tr.byte()?;
                    let n = tr.varlen()? as usize;
                    let payload = tr.take(n)?;
                    match ty {
                        0x51 if n == 3 => out.tempos.push((
                            tick,
                            (u32::from(payload[0]) << 16)
                                | (u32::from(payload[1]) << 8)
                                | u32::from(payload[2]),
                        )),
                        0x2F if n == 0 => ended = true,
                        0x51 | 0x2F => return Err(format!("track {t}: bad meta length")),
                        _ => {}
                    }
                    status = None;
                }
                0xF0 | 0xF7 => {
                    let n = tr.varlen()? as usize;
                    tr.take(n)?;
                    status = None;
                }
                0x80..=0xEF => {
                    status = Some(st);
                    let ch = st & 0x0F;
                    let mut d1 = || -> Result<u8, String> {
                        match data1 {
                            Some(b) => Ok(b),
                            None => tr.byte(),
                        }
                    };
                    let a = d1()?;
                    if a > 127 {
                        return Err(format!("track {t}: data byte above 127"));
                    }
                    let two = !matches!(st & 0xF0, 0xC0 | 0xD0);
                    let b = if two { tr.byte()? } else { 0 };
                    if b > 127 {
                        return Err(format!("track {t}: data byte above 127"));
                    }
                    if !channels.contains(&ch) && matches!(st & 0xF0, 0x80 | 0x90) {
                        channels.push(ch);
                    }
                    match st & 0xF0 {
                        0x90 if b > 0 => {
                            *out.note_ons.entry((ch, a)).or_default() += 1;
                            open.entry((ch, a)).or_default().push((tick, b));
                        }
                        0x80 | 0x90 => {
                            *out.note_offs.entry((ch, a)).or_default() += 1;
                            let stack = open.entry((ch, a)).or_default();
                            if stack.is_empty() {
                                return Err(format!("track {t}: note-off without note-on ch {ch} pitch {a} at {tick}"));
                            }
                            let (on, vel) = stack.remove(0);
                            out.notes.push(ParsedNote {
                                onset: on,
                                channel: ch,
                                pitch: a,
                                duration: tick - on,
                                velocity: vel,
                            });
                        }
                        0xC0 => out.programs.push((t, tick, ch, a)),
                        _ => {}
                    }
                }
                _ => return Err(format!("track {t}: unsupported status {st:#x}")),
            }
        }
        if !ended {
            return Err(format!("track {t}: no end-of-track"));
        }
        out.track_channels.push(channels);
    }
    if r.pos != data.len() {
        return Err("trailing bytes after last track".into());
    }
    if let Some(((ch, p), _)) = open.iter().find(|(_, v)| !v.is_empty()) {
        return Err(format!("unterminated note ch {ch} pitch {p}"));
    }
    out.tracks = ntracks;
    out.notes.sort();
    Ok(out)
}
