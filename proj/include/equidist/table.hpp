// table.hpp
//
// Homogeneous result tables and their CSV / JSONL serialisation.

#ifndef EQUIDIST_TABLE_HPP
#define EQUIDIST_TABLE_HPP

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "equidist/numtheory.hpp"

namespace eqd {

using Cell = std::variant<i64, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Throws std::invalid_argument if the row width differs from columns.
    void add(std::vector<Cell> row);
};

enum class Format { Csv, Jsonl };

/// "%.12g"; non-finite values print as nan / inf / -inf.
std::string format_double(double v);

/// CSV: header always, RFC 4180 quoting, "\n" line ends.
/// JSONL: one object per row, keys in column order; doubles are rounded to
/// 12 significant digits first. Zero rows give an empty stream.
void emit(const Table& t, Format f, std::ostream& out);

}  // namespace eqd

#endif
