#include "pdsim/io.hpp"

#include "pdsim/common.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pdsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ','))
        out.push_back(trim(field));
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double parse_double(const std::string& text, const std::string& file, std::size_t row,
                    const std::string& column) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    require(ec == std::errc{} && ptr == end, file, ": row ", row, ", column '", column,
            "': cannot parse number from '", text, "'");
    require(std::isfinite(v), file, ": row ", row, ", column '", column, "': non-finite value");
    return v;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    require_numeric(ec == std::errc{}, "format_double failed");
    return std::string(buf, ptr);
}

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    require(it != header.end(), "missing required column '", name, "'");
    return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open file: ", path);
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#')
            continue;
        auto fields = split_fields(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
        } else {
            require(fields.size() == table.header.size(), path, ": row ", table.rows.size() + 2,
                    " has ", fields.size(), " fields, header has ", table.header.size());
            table.rows.push_back(std::move(fields));
        }
    }
    require(have_header, path, ": no header row");
    return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary); // binary: byte-stable newlines
    require(out.good(), "cannot write file: ", path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << '\n';
    }
    require(out.good(), "write failed: ", path);
}

std::map<std::string, double> load_rating_map(const std::string& path) {
    const CsvTable table = read_csv(path);
    const std::size_t rating_col = table.column("rating");
    const std::size_t pd_col = table.column("pd");
    std::map<std::string, double> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string& rating = table.rows[r][rating_col];
        require(!rating.empty(), path, ": row ", r + 2, ": empty rating");
        const double pd = parse_double(table.rows[r][pd_col], path, r + 2, "pd");
        require(pd > 0.0 && pd < 1.0, path, ": row ", r + 2, ": pd must lie in (0,1)");
        require(out.emplace(rating, pd).second, path, ": duplicate rating '", rating, "'");
    }
    return out;
}

LoadedBanks load_banks(const std::string& path, const std::map<std::string, double>& rating_map,
                       double lgd) {
    const CsvTable table = read_csv(path);
    const std::size_t c_name = table.column("name");
    const std::size_t c_assets = table.column("total_assets");
    const std::size_t c_capital = table.column("capital");
    const std::size_t c_ifa = table.column("intra_financial_assets");
    const std::size_t c_ifl = table.column("intra_financial_liabilities");
    const std::size_t c_rating = table.column("rating");
    const std::size_t c_pd = table.column("pd0");

    LoadedBanks out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = r + 2;

        BankNode bank;
        bank.id = r;
        bank.name = row[c_name];
        require(!bank.name.empty(), path, ": row ", line, ": empty bank name");
        bank.total_asset = parse_double(row[c_assets], path, line, "total_assets");
        bank.capital = parse_double(row[c_capital], path, line, "capital");
        bank.lgd = lgd;

        if (!row[c_pd].empty()) {
            bank.pd0 = parse_double(row[c_pd], path, line, "pd0");
        } else {
            const std::string& rating = row[c_rating];
            require(!rating.empty(), path, ": row ", line,
                    ": need either pd0 or rating for bank '", bank.name, "'");
            const auto it = rating_map.find(rating);
            require(it != rating_map.end(), path, ": row ", line, ": unknown rating '", rating,
                    "' for bank '", bank.name, "'");
            bank.pd0 = it->second;
        }
        require(bank.pd0 > 0.0 && bank.pd0 < 1.0, path, ": row ", line, ": pd0 out of (0,1)");
        require(bank.capital < bank.total_asset, path, ": row ", line, ": capital ", bank.capital,
                " must be below total assets ", bank.total_asset);
        bank.validate();

        const double ifa = parse_double(row[c_ifa], path, line, "intra_financial_assets");
        const double ifl = parse_double(row[c_ifl], path, line, "intra_financial_liabilities");
        require(ifa >= 0.0 && ifl >= 0.0, path, ": row ", line,
                ": intra-financial positions must be nonnegative");

        out.banks.push_back(std::move(bank));
        out.marginals.assets.push_back(ifa);
        out.marginals.liabilities.push_back(ifl);
    }
    validate_banks(out.banks);
    return out;
}

void write_network(const std::string& path, const ExposureNetwork& net) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < net.size(); ++i)
        for (std::size_t j = 0; j < net.size(); ++j)
            if (net(i, j) > 0.0)
                rows.push_back({std::to_string(i), std::to_string(j), format_double(net(i, j))});
    write_csv(path, {"from", "to", "amount"}, rows);
}

ExposureNetwork read_network(const std::string& path, std::size_t n) {
    const CsvTable table = read_csv(path);
    const std::size_t c_from = table.column("from");
    const std::size_t c_to = table.column("to");
    const std::size_t c_amount = table.column("amount");
    ExposureNetwork net(n);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::size_t line = r + 2;
        const double from = parse_double(table.rows[r][c_from], path, line, "from");
        const double to = parse_double(table.rows[r][c_to], path, line, "to");
        const double amount = parse_double(table.rows[r][c_amount], path, line, "amount");
        const auto i = static_cast<std::size_t>(from);
        const auto j = static_cast<std::size_t>(to);
        require(i < n && j < n && from == std::floor(from) && to == std::floor(to), path, ": row ",
                line, ": node indices must be integers below ", n);
        require(i != j, path, ": row ", line, ": self-exposures are not allowed");
        net.add(i, j, amount);
    }
    return net;
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace pdsim
