//! Table lookup: loads a classically known sequence entry into a data
//! register, addressed by a counter register, under multi-controlled NOTs.

use crate::align::Sequence;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::gate::{Control, Gate};
use crate::sim::layout::Register;

/// Appends a lookup of `table` addressed by `addr`: for address `a` in
/// `1..=table.len()`, XORs the 2-bit code of `table[a-1]` into `data` and
/// flips `hit`. Address `0` and addresses past the end of the table load
/// nothing and leave `hit` clear, which is what distinguishes a genuine
/// character from an empty data register.
///
/// The circuit is self-inverse when `data` and `hit` start cleared, so the
/// same call uncomputes a previous load (at the same address value).
pub fn emit_table_lookup(
    c: &mut Circuit,
    table: &Sequence,
    addr: Register,
    data: Register,
    hit: Option<usize>,
    extra_controls: &[Control],
) -> Result<()> {
    let len = table.len() as u64;
    if addr.width > 63 || len > addr.mask() {
        return Err(Error::AddressWidth {
            needed: 64 - len.leading_zeros() as usize,
            entries: table.len(),
            width: addr.width,
        });
    }
    if data.width != 2 {
        return Err(Error::Contract(format!(
            "character data register must be 2 bits wide, got {}",
            data.width
        )));
    }
    for a in 1..=len {
        let mut controls: Vec<Control> = extra_controls.to_vec();
        for bit in 0..addr.width {
            let q = addr.qubit(bit);
            if a >> bit & 1 == 1 {
                controls.push(Control::pos(q));
            } else {
                controls.push(Control::neg(q));
            }
        }
        let code = table.get(a as usize - 1).expect("address in range").code();
        for bit in 0..2 {
            if code >> bit & 1 == 1 {
                c.push(Gate::mcx(controls.clone(), data.qubit(bit)))?;
            }
        }
        if let Some(h) = hit {
            c.push(Gate::mcx(controls.clone(), h))?;
        }
    }
    Ok(())
}
