#pragma once
// Transaction-file parsing and the built-in fixtures.

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "catclust/model.hpp"

namespace catclust {

enum class LabelPolicy {
    first_field_is_record_label,  // "abies,al,ak" -> event {al, ak}
    all_fields_are_members,
};

struct TransactionFormat {
    char delimiter = ',';
    LabelPolicy label_policy = LabelPolicy::first_field_is_record_label;
    // Cluster the record labels instead: one event per member token, listing
    // the records it appears in. Requires first_field_is_record_label.
    bool transpose = false;
};

struct ParseResult {
    Dataset dataset;
    std::vector<Diagnostic> diagnostics;
};

// One event per non-blank line. Lines with no members, empty fields or a
// repeated member are skipped and reported. Invalid UTF-8 is replaced with
// U+FFFD. Throws InputError when no line yields an event.
ParseResult parse_transactions(std::istream& in, const TransactionFormat& format = {});
ParseResult parse_transactions_file(const std::string& path, const TransactionFormat& format = {});

// Writes events back as transaction lines. With a record-label policy each
// line is prefixed with "r<index>".
void write_transactions(std::ostream& out, const Dataset& dataset, const TransactionFormat& format = {});

// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

inline constexpr std::string_view kSevenEventFixture = "seven_event";
inline constexpr std::string_view kAppendixAFixture = "appendix_a_reference";

using Fixture = std::variant<Dataset, LabeledPartition>;

// seven_event -> Dataset; appendix_a_reference -> LabeledPartition.
// Throws InputError for any other name.
Fixture load_fixture(std::string_view name);

Dataset seven_event_dataset();
LabeledPartition appendix_a_reference();

// Reads a reference partition stored as a JSON list of label lists.
LabeledPartition read_labeled_partition(std::istream& in);
LabeledPartition read_labeled_partition_file(const std::string& path);

}  // namespace catclust
