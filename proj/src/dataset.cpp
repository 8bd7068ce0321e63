#include "toit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace toit {

const char* to_string(DatasetErrorKind kind) noexcept {
    switch (kind) {
        case DatasetErrorKind::MalformedLine: return "MalformedLine";
        case DatasetErrorKind::DuplicateItemInTransaction: return "DuplicateItemInTransaction";
        case DatasetErrorKind::TUChecksumMismatch: return "TUChecksumMismatch";
        case DatasetErrorKind::InconsistentProfitSign: return "InconsistentProfitSign";
        case DatasetErrorKind::NonPositivePeriodTotal: return "NonPositivePeriodTotal";
        case DatasetErrorKind::EmptyDatabase: return "EmptyDatabase";
        case DatasetErrorKind::EmptyTransaction: return "EmptyTransaction";
        case DatasetErrorKind::ZeroUtilityItem: return "ZeroUtilityItem";
        case DatasetErrorKind::TooManyItems: return "TooManyItems";
        case DatasetErrorKind::Io: return "Io";
    }
    return "Unknown";
}

namespace {

std::string describe(DatasetErrorKind kind, const std::string& message, std::size_t line) {
    std::string out = to_string(kind);
    if (line != 0) out += " (line " + std::to_string(line) + ")";
    out += ": ";
    out += message;
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename Int>
bool parse_int(std::string_view token, Int& value) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    return ec == std::errc{} && ptr == end && !token.empty();
}

template <typename Int>
std::vector<Int> parse_list(std::string_view field, std::size_t line, const char* what) {
    std::vector<Int> values;
    std::size_t pos = 0;
    while (pos < field.size()) {
        while (pos < field.size() && (field[pos] == ' ' || field[pos] == '\t')) ++pos;
        if (pos >= field.size()) break;
        auto next = field.find_first_of(" \t", pos);
        if (next == std::string_view::npos) next = field.size();
        Int value{};
        const auto token = field.substr(pos, next - pos);
        if (!parse_int(token, value)) {
            throw DatasetError(DatasetErrorKind::MalformedLine,
                               std::string("non-integer ") + what + " token '" + std::string(token) + "'", line);
        }
        values.push_back(value);
        pos = next;
    }
    return values;
}

// Per-transaction checks shared by the parser and from_transactions.
void check_entries(const Transaction& t, std::size_t line) {
    const auto where = line != 0 ? std::string{} : " in transaction " + std::to_string(t.tid);
    if (t.entries.empty()) {
        throw DatasetError(DatasetErrorKind::EmptyTransaction, "transaction has no items" + where, line);
    }
    std::vector<ItemId> ids;
    ids.reserve(t.entries.size());
    for (const auto& e : t.entries) {
        if (e.item == 0) {
            throw DatasetError(DatasetErrorKind::MalformedLine, "item ids must be positive" + where, line);
        }
        if (e.utility == 0) {
            throw DatasetError(DatasetErrorKind::ZeroUtilityItem,
                               "item " + std::to_string(e.item) + " has zero utility" + where, line);
        }
        ids.push_back(e.item);
    }
    std::sort(ids.begin(), ids.end());
    const auto dup = std::adjacent_find(ids.begin(), ids.end());
    if (dup != ids.end()) {
        throw DatasetError(DatasetErrorKind::DuplicateItemInTransaction,
                           "item " + std::to_string(*dup) + " repeated" + where, line);
    }
}

}  // namespace

DatasetError::DatasetError(DatasetErrorKind kind, const std::string& message, std::size_t line)
    : std::runtime_error(describe(kind, message, line)), kind_(kind), line_(line) {}

OnShelfDatabase OnShelfDatabase::from_transactions(std::vector<Transaction> transactions) {
    if (transactions.empty()) {
        throw DatasetError(DatasetErrorKind::EmptyDatabase, "database has no transactions");
    }
    OnShelfDatabase db;
    std::map<ItemId, ItemInfo> items;
    std::map<Period, Money> totals;
    db.tu_.reserve(transactions.size());
    for (const auto& t : transactions) {
        check_entries(t, 0);
        const Money tu = transaction_utility(t);
        db.tu_.push_back(tu);
        totals[t.period] += tu;
        for (const auto& e : t.entries) {
            const bool positive = e.utility > 0;
            auto [it, inserted] = items.try_emplace(e.item, ItemInfo{e.item, positive, 0, 0});
            if (!inserted && it->second.positive != positive) {
                throw DatasetError(DatasetErrorKind::InconsistentProfitSign,
                                   "item " + std::to_string(e.item) + " has both positive and negative utilities");
            }
            it->second.total_utility += e.utility;
            it->second.occurrences += 1;
        }
    }
    if (items.size() > kMaxDistinctItems) {
        throw DatasetError(DatasetErrorKind::TooManyItems,
                           std::to_string(items.size()) + " distinct items exceeds the supported maximum");
    }
    for (const auto& [period, total] : totals) {
        if (total <= 0) {
            throw DatasetError(DatasetErrorKind::NonPositivePeriodTotal,
                               "period " + std::to_string(period) + " has total utility " + std::to_string(total));
        }
        db.periods_.push_back(period);
        db.period_totals_.push_back(total);
    }
    db.items_.reserve(items.size());
    for (const auto& [id, info] : items) db.items_.push_back(info);
    db.transactions_ = std::move(transactions);
    return db;
}

std::optional<std::size_t> OnShelfDatabase::period_slot(Period period) const noexcept {
    const auto it = std::lower_bound(periods_.begin(), periods_.end(), period);
    if (it == periods_.end() || *it != period) return std::nullopt;
    return static_cast<std::size_t>(it - periods_.begin());
}

std::optional<std::size_t> OnShelfDatabase::item_slot(ItemId id) const noexcept {
    const auto it = std::lower_bound(items_.begin(), items_.end(), id,
                                     [](const ItemInfo& info, ItemId value) { return info.id < value; });
    if (it == items_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - items_.begin());
}

Money OnShelfDatabase::period_total(Period period) const {
    const auto slot = period_slot(period);
    if (!slot) throw std::out_of_range("period " + std::to_string(period) + " not in database");
    return period_totals_[*slot];
}

OnShelfDatabase parse_database(std::istream& in) {
    std::vector<Transaction> transactions;
    std::unordered_map<ItemId, std::pair<bool, std::size_t>> first_sign;  // sign, line first seen
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto text = trim(raw);
        if (text.empty() || text.front() == '#' || text.front() == '%' || text.front() == '@') continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto colon = text.find(':', start);
            fields.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
            if (colon == std::string_view::npos) break;
            start = colon + 1;
        }
        if (fields.size() != 4) {
            throw DatasetError(DatasetErrorKind::MalformedLine,
                               "expected 4 colon-separated fields, found " + std::to_string(fields.size()), line);
        }
        const auto ids = parse_list<ItemId>(fields[0], line, "item id");
        Money declared_tu = 0;
        if (!parse_int(trim(fields[1]), declared_tu)) {
            throw DatasetError(DatasetErrorKind::MalformedLine, "non-integer transaction utility", line);
        }
        const auto utilities = parse_list<Money>(fields[2], line, "utility");
        Period period = 0;
        if (!parse_int(trim(fields[3]), period)) {
            throw DatasetError(DatasetErrorKind::MalformedLine, "period must be a non-negative integer", line);
        }
        if (ids.size() != utilities.size()) {
            throw DatasetError(DatasetErrorKind::MalformedLine,
                               std::to_string(ids.size()) + " item ids but " + std::to_string(utilities.size()) +
                                   " utilities",
                               line);
        }

        Transaction t;
        t.tid = static_cast<std::uint32_t>(transactions.size() + 1);
        t.period = period;
        t.entries.reserve(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) t.entries.push_back({ids[i], utilities[i]});
        check_entries(t, line);

        const Money actual_tu = transaction_utility(t);
        if (actual_tu != declared_tu) {
            throw DatasetError(DatasetErrorKind::TUChecksumMismatch,
                               "declared " + std::to_string(declared_tu) + ", item utilities sum to " +
                                   std::to_string(actual_tu),
                               line);
        }
        for (const auto& e : t.entries) {
            const bool positive = e.utility > 0;
            const auto [it, inserted] = first_sign.try_emplace(e.item, positive, line);
            if (!inserted && it->second.first != positive) {
                throw DatasetError(DatasetErrorKind::InconsistentProfitSign,
                                   "item " + std::to_string(e.item) + " changes sign (first seen on line " +
                                       std::to_string(it->second.second) + ")",
                                   line);
            }
        }
        transactions.push_back(std::move(t));
    }
    if (in.bad()) throw DatasetError(DatasetErrorKind::Io, "read failure");
    return OnShelfDatabase::from_transactions(std::move(transactions));
}

OnShelfDatabase parse_database_text(const std::string& text) {
    std::istringstream in(text);
    return parse_database(in);
}

OnShelfDatabase load_database(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError(DatasetErrorKind::Io, "cannot open " + path.string());
    return parse_database(in);
}

void write_database(const OnShelfDatabase& db, std::ostream& out) {
    for (const auto& t : db.transactions()) {
        for (std::size_t i = 0; i < t.entries.size(); ++i) {
            if (i) out << ' ';
            out << t.entries[i].item;
        }
        out << ':' << transaction_utility(t) << ':';
        for (std::size_t i = 0; i < t.entries.size(); ++i) {
            if (i) out << ' ';
            out << t.entries[i].utility;
        }
        out << ':' << t.period << '\n';
    }
}

std::string format_database(const OnShelfDatabase& db) {
    std::ostringstream out;
    write_database(db, out);
    return out.str();
}

std::string format_pattern(const Pattern& p) {
    std::string line;
    for (std::size_t i = 0; i < p.items.size(); ++i) {
        if (i) line += ' ';
        line += std::to_string(p.items[i]);
    }
    line += " #UTIL: " + std::to_string(p.utility);
    line += " #TO: " + std::to_string(p.period_total);
    line += " #RU: " + std::to_string(p.utility) + "/" + std::to_string(p.period_total);
    return line;
}

void write_patterns(std::span<const Pattern> patterns, std::ostream& out) {
    for (const auto& p : patterns) out << format_pattern(p) << '\n';
    if (!out) throw DatasetError(DatasetErrorKind::Io, "pattern sink write failed");
}

void save_patterns(std::span<const Pattern> patterns, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DatasetError(DatasetErrorKind::Io, "cannot open " + path.string() + " for writing");
    write_patterns(patterns, out);
}

OnShelfDatabase reperiod(const OnShelfDatabase& db, std::uint32_t n_periods) {
    if (n_periods == 0) throw std::invalid_argument("reperiod needs at least one period");
    auto transactions = db.transactions();
    for (std::size_t i = 0; i < transactions.size(); ++i) {
        transactions[i].period = static_cast<Period>(i % n_periods);
    }
    return OnShelfDatabase::from_transactions(std::move(transactions));
}

}  // namespace toit
