#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "catclust/ingest.hpp"
#include "oracles.hpp"

using namespace catclust;

namespace {

ParseResult parse(const std::string& text, TransactionFormat fmt = {}) {
    std::istringstream in(text);
    return parse_transactions(in, fmt);
}

// Hands the text out a few bytes at a time.
class ChunkedBuf : public std::streambuf {
public:
    ChunkedBuf(std::string text, std::size_t chunk) : text_(std::move(text)), chunk_(chunk) {}

protected:
    int_type underflow() override {
        if (pos_ >= text_.size()) return traits_type::eof();
        const std::size_t n = std::min(chunk_, text_.size() - pos_);
        char* base = text_.data() + pos_;
        setg(base, base, base + n);
        pos_ += n;
        return traits_type::to_int_type(*base);
    }

private:
    std::string text_;
    std::size_t chunk_;
    std::size_t pos_ = 0;
};

}  // namespace

TEST_CASE("record label is dropped from membership") {
    const auto r = parse("abies,al,ak\n");
    REQUIRE(r.dataset.events.size() == 1);
    CHECK(r.dataset.vocabulary.labels() == std::vector<std::string>{"al", "ak"});
    CHECK(r.dataset.events[0].members() == std::vector<VarId>{0, 1});
}

TEST_CASE("empty input is an error") {
    CHECK_THROWS_AS(parse(""), InputError);
    CHECK_THROWS_AS(parse("\n\n  \n"), InputError);
    CHECK_THROWS_AS(parse("lonely\n"), InputError);  // label only, no members
}

TEST_CASE("blank lines are skipped and malformed lines reported") {
    const std::string text =
        "a,x,y\r\n"
        "\n"
        "b\n"
        "c,x,,y\n"
        "d,y,y\n"
        "e, z , x\n";
    const auto r = parse(text);
    CHECK(r.dataset.events.size() == 2);
    REQUIRE(r.diagnostics.size() == 3);
    CHECK(r.diagnostics[0].line == 3);
    CHECK(r.diagnostics[1].line == 4);
    CHECK(r.diagnostics[2].line == 5);
    CHECK(r.dataset.vocabulary.labels() == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("all-fields policy and custom delimiter") {
    const auto r = parse("A;B;C\nB;D\n", {';', LabelPolicy::all_fields_are_members});
    CHECK(r.dataset.vocabulary.labels() == std::vector<std::string>{"A", "B", "C", "D"});
    CHECK(r.dataset.events.size() == 2);
}

TEST_CASE("transpose clusters record labels by shared members") {
    TransactionFormat fmt;
    fmt.transpose = true;
    const auto r = parse("oak,ny,pa\npine,pa,ca\nfir,ca\n", fmt);
    CHECK(r.dataset.vocabulary.labels() == std::vector<std::string>{"oak", "pine", "fir"});
    REQUIRE(r.dataset.events.size() == 3);  // ny, pa, ca
    CHECK(r.dataset.events[1].pattern() == Pattern{0, 1});
    CHECK(r.dataset.events[2].pattern() == Pattern{1, 2});

    fmt.label_policy = LabelPolicy::all_fields_are_members;
    CHECK_THROWS_AS(parse("x,y\n", fmt), ConfigError);
}

TEST_CASE("non-UTF-8 record labels are tolerated") {
    const std::string latin1 = "Abies \xE9pic\xE9\x61,al,ak\n";
    const auto r = parse(latin1);
    CHECK(r.dataset.events.size() == 1);
    CHECK(r.diagnostics.empty());

    CHECK(sanitize_utf8("plain") == "plain");
    CHECK(sanitize_utf8("caf\xC3\xA9") == "caf\xC3\xA9");
    CHECK(sanitize_utf8("caf\xE9") == "caf\xEF\xBF\xBD");
    CHECK(sanitize_utf8("\xC0\xAF") == "\xEF\xBF\xBD\xEF\xBF\xBD");  // overlong
    CHECK(sanitize_utf8("\xED\xA0\x80") == "\xEF\xBF\xBD\xEF\xBF\xBD\xEF\xBF\xBD");  // surrogate

    TransactionFormat fmt;
    fmt.transpose = true;
    const auto t = parse(latin1, fmt);
    CHECK(t.dataset.vocabulary.label(0) == "Abies \xEF\xBF\xBDpic\xEF\xBF\xBD\x61");
}

TEST_CASE("parsing does not depend on read-buffer size") {
    std::mt19937 rng(61);
    const auto log = oracle::random_log(rng, 12, 60, 8);
    std::string text;
    for (std::size_t i = 0; i < log.size(); ++i) {
        text += "rec" + std::to_string(i);
        for (const auto& t : log[i]) text += "," + t;
        text += i % 7 == 0 ? "\r\n\n" : "\n";
    }
    const auto whole = parse(text);
    for (std::size_t chunk : {1u, 2u, 3u, 7u, 64u}) {
        ChunkedBuf buf(text, chunk);
        std::istream in(&buf);
        const auto r = parse_transactions(in);
        CHECK(r.dataset == whole.dataset);
    }
}

TEST_CASE("writing and re-parsing gives the same dataset") {
    std::mt19937 rng(62);
    for (int trial = 0; trial < 30; ++trial) {
        const auto ds = build_vocabulary(oracle::random_log(rng, 10, 20, 6)).dataset;
        for (auto policy : {LabelPolicy::first_field_is_record_label, LabelPolicy::all_fields_are_members}) {
            TransactionFormat fmt{',', policy, false};
            std::ostringstream out;
            write_transactions(out, ds, fmt);
            CHECK(parse(out.str(), fmt).dataset == ds);
        }
    }
}

TEST_CASE("fixtures") {
    auto seven = load_fixture("seven_event");
    REQUIRE(std::holds_alternative<Dataset>(seven));
    const auto& ds = std::get<Dataset>(seven);
    CHECK(ds.events.size() == 7);
    CHECK(decode_events(ds)[0] == std::vector<std::string>{"A", "B", "C", "D", "E"});

    auto ref = load_fixture("appendix_a_reference");
    REQUIRE(std::holds_alternative<LabeledPartition>(ref));
    const auto& groups = std::get<LabeledPartition>(ref);
    CHECK(groups.size() == 31);
    CHECK(groups[0] == std::vector<std::string>{"fl", "hi", "pr"});
    std::set<std::string> codes;
    std::size_t total = 0;
    for (const auto& g : groups) {
        codes.insert(g.begin(), g.end());
        total += g.size();
    }
    CHECK(codes.size() == 70);
    CHECK(total == 70);

    CHECK_THROWS_AS(load_fixture("plants"), InputError);
}

TEST_CASE("shipped fixture files agree with the built-in fixtures") {
    const std::string dir = CATCLUST_SOURCE_DIR "/data/";
    CHECK(read_labeled_partition_file(dir + "appendix_a_reference.json") == appendix_a_reference());
    const auto seven = parse_transactions_file(dir + "seven_event.txt", {',', LabelPolicy::all_fields_are_members});
    CHECK(seven.dataset == seven_event_dataset());
}

TEST_CASE("reference partition JSON errors are input errors") {
    std::istringstream bad("{\"not\": \"a list\"}");
    CHECK_THROWS_AS(read_labeled_partition(bad), InputError);
    std::istringstream good(R"([["a","b"],["c"]])");
    CHECK(read_labeled_partition(good) == LabeledPartition{{"a", "b"}, {"c"}});
    CHECK_THROWS_AS(read_labeled_partition_file("/nonexistent/ref.json"), InputError);
}
