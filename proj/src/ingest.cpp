#include "catclust/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

namespace catclust {

namespace {

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(delim, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// Length of the valid UTF-8 sequence starting at s[0], or 0 if invalid.
std::size_t utf8_sequence_length(std::string_view s) {
    const auto b0 = static_cast<unsigned char>(s[0]);
    if (b0 < 0x80) return 1;
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return 0;
    }
    if (s.size() < len) return 0;
    for (std::size_t i = 1; i < len; ++i) {
        const auto b = static_cast<unsigned char>(s[i]);
        if ((b & 0xC0) != 0x80) return 0;
        cp = (cp << 6) | (b & 0x3F);
    }
    // overlong forms, surrogates, out of range
    static constexpr char32_t min_for_len[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
    return len;
}

}  // namespace

std::string sanitize_utf8(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    while (!bytes.empty()) {
        const std::size_t len = utf8_sequence_length(bytes);
        if (len == 0) {
            out += "\xEF\xBF\xBD";
            bytes.remove_prefix(1);
        } else {
            out.append(bytes.substr(0, len));
            bytes.remove_prefix(len);
        }
    }
    return out;
}

ParseResult parse_transactions(std::istream& in, const TransactionFormat& format) {
    const bool labelled = format.label_policy == LabelPolicy::first_field_is_record_label;
    if (format.transpose && !labelled)
        throw ConfigError("transpose needs the first field to be a record label");

    ParseResult result;
    std::vector<std::pair<std::string, std::vector<std::string>>> records;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view body = trim(line);
        if (body.empty()) continue;

        auto fields = split(body, format.delimiter);
        std::string record_label;
        if (labelled) {
            record_label = sanitize_utf8(fields.front());
            fields.erase(fields.begin());
        }
        if (fields.empty()) {
            result.diagnostics.push_back({lineno, "record has no members"});
            continue;
        }
        if (std::ranges::any_of(fields, [](std::string_view f) { return f.empty(); })) {
            result.diagnostics.push_back({lineno, "empty field"});
            continue;
        }
        std::vector<std::string> members;
        members.reserve(fields.size());
        for (auto f : fields) members.push_back(sanitize_utf8(f));
        if (std::set<std::string_view>(members.begin(), members.end()).size() != members.size()) {
            result.diagnostics.push_back({lineno, "record repeats a member"});
            continue;
        }

        if (format.transpose) {
            records.emplace_back(std::move(record_label), std::move(members));
            continue;
        }
        std::vector<VarId> ids;
        ids.reserve(members.size());
        for (const auto& m : members) ids.push_back(result.dataset.vocabulary.intern(m));
        result.dataset.events.emplace_back(std::move(ids));
    }

    if (format.transpose) {
        // One event per member token, listing the records it appears in.
        std::vector<std::string> order;
        std::map<std::string, std::vector<VarId>> by_member;
        std::set<std::string> seen_records;
        for (const auto& [record, members] : records) {
            if (!seen_records.insert(record).second) {
                result.diagnostics.push_back({0, "record label '" + record + "' repeats; later copy ignored"});
                continue;
            }
            const VarId rid = result.dataset.vocabulary.intern(record);
            for (const auto& m : members) {
                auto [it, inserted] = by_member.try_emplace(m);
                if (inserted) order.push_back(m);
                it->second.push_back(rid);
            }
        }
        for (const auto& m : order) result.dataset.events.emplace_back(std::move(by_member[m]));
    }

    if (result.dataset.events.empty()) throw InputError("no parseable transactions in input");
    return result;
}

ParseResult parse_transactions_file(const std::string& path, const TransactionFormat& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_transactions(in, format);
}

void write_transactions(std::ostream& out, const Dataset& dataset, const TransactionFormat& format) {
    const bool labelled = format.label_policy == LabelPolicy::first_field_is_record_label;
    for (std::size_t i = 0; i < dataset.events.size(); ++i) {
        bool first = true;
        if (labelled) {
            out << 'r' << i;
            first = false;
        }
        for (VarId v : dataset.events[i].members()) {
            if (!first) out << format.delimiter;
            out << dataset.vocabulary.label(v);
            first = false;
        }
        out << '\n';
    }
}

Dataset seven_event_dataset() {
    const std::vector<std::vector<std::string>> raw = {
        {"A", "B", "C", "D", "E"},
        {"B", "A", "C", "D"},
        {"C", "A", "B", "D"},
        {"D", "A", "B", "C"},
        {"E", "A", "F", "G"},
        {"F", "E", "G"},
        {"G", "E", "F"},
    };
    return build_vocabulary(raw).dataset;
}

LabeledPartition appendix_a_reference() {
    return {
        {"fl", "hi", "pr"},
        {"nc", "va"},
        {"il", "in", "ia", "mo"},
        {"ky", "tn"},
        {"la", "tx"},
        {"md", "de"},
        {"mi", "wi"},
        {"ak", "yt"},
        {"az", "nm"},
        {"ca", "nv", "or"},
        {"co", "ut", "wy"},
        {"ga", "al"},
        {"id", "mt", "wa"},
        {"ny", "pa", "ri", "vt", "ns", "on", "nj"},
        {"oh", "wv", "qc"},
        {"ab", "bc", "sk"},
        {"mb", "nb", "nt"},
        {"nf", "nu", "pe", "fraspn"},
        {"ks", "ne"},
        {"nd", "sd", "dengl"},
        {"ok", "ar", "gl"},
        {"ct"},
        {"dc"},
        {"ms"},
        {"sc"},
        {"vi"},
        {"me"},
        {"ma"},
        {"mn"},
        {"nh"},
        {"lb"},
    };
}

Fixture load_fixture(std::string_view name) {
    if (name == kSevenEventFixture) return seven_event_dataset();
    if (name == kAppendixAFixture) return appendix_a_reference();
    throw InputError("unknown fixture '" + std::string(name) + "'");
}

LabeledPartition read_labeled_partition(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
        return doc.get<LabeledPartition>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("reference partition is not a JSON list of label lists: ") + e.what());
    }
}

LabeledPartition read_labeled_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_labeled_partition(in);
}

}  // namespace catclust
