#pragma once

#include "pdsim/engine.hpp"
#include "pdsim/inference.hpp"
#include "pdsim/model.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pdsim {

// Shortest round-trip decimal rendering; identical input bits give identical
// text, which the byte-reproducibility contract of reports relies on.
std::string format_double(double v);

// Minimal CSV: comma separated, no quoting, '#' comments and blank lines
// skipped. First row is the header.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const; // throws if absent
};

CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// rating -> per-period default probability.
std::map<std::string, double> load_rating_map(const std::string& path);

struct LoadedBanks {
    std::vector<BankNode> banks;
    AggregateMarginals marginals;
};

// Bank sheet with columns name, total_assets, capital, intra_financial_assets,
// intra_financial_liabilities, rating, pd0. Every row needs pd0 or a rating
// present in the map. LGD applies uniformly.
LoadedBanks load_banks(const std::string& path, const std::map<std::string, double>& rating_map,
                       double lgd = 0.6);

// Edge list (from,to,amount) with zero-based node indices; `from` is the
// exposed lender.
void write_network(const std::string& path, const ExposureNetwork& net);
ExposureNetwork read_network(const std::string& path, std::size_t n);

// FNV-1a over the canonical config text, reported so reruns can be matched to
// their configuration.
std::uint64_t fnv1a_hash(const std::string& text);

} // namespace pdsim
