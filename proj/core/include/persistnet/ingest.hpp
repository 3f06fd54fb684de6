#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace persistnet {

/// Aligned close prices. Rows are dates (strictly increasing ISO-8601),
/// columns are assets (sorted lexicographically). Every cell is populated
/// and strictly positive.
struct PricePanel {
    std::vector<std::string> dates;
    std::vector<std::string> assets;
    Eigen::MatrixXd values;

    std::size_t n_days() const { return dates.size(); }
    std::size_t n_assets() const { return assets.size(); }
};

/// Daily log-returns. `dates[t]` is the later day of the pair (t, t+1) of
/// the originating price panel.
struct ReturnPanel {
    std::vector<std::string> dates;
    std::vector<std::string> assets;
    Eigen::MatrixXd values;

    std::size_t n_days() const { return dates.size(); }
    std::size_t n_assets() const { return assets.size(); }
};

/// Contiguous block of rows [end_index - length + 1, end_index] of a ReturnPanel.
struct ReturnWindow {
    std::size_t end_index = 0;
    std::size_t length = 0;
    std::vector<std::string> assets;
    Eigen::MatrixXd values;
};

struct DroppedDate {
    std::string date;
    std::string reason;
};

struct LoadResult {
    PricePanel panel;
    std::vector<DroppedDate> dropped;
};

// Long-format CSV with header `date,asset,close`. Dates missing for any
// asset are dropped (intersection semantics) and listed in `dropped`.
LoadResult load_prices(const std::filesystem::path& source);
LoadResult parse_prices(std::istream& in);

// Throws ValidationError when a PricePanel invariant is violated.
void validate(const PricePanel& panel);

ReturnPanel log_returns(const PricePanel& prices);

// Inverse of log_returns given a starting price per asset. `first_date`
// labels the reconstructed initial row.
PricePanel prices_from_returns(const ReturnPanel& returns, double start_price, const std::string& first_date);

ReturnWindow slice_window(const ReturnPanel& returns, std::ptrdiff_t end_index, std::size_t length);

// Keeps the first `count` assets (lexicographic order), all dates.
ReturnPanel select_assets(const ReturnPanel& returns, std::size_t count);

void write_prices_csv(std::ostream& out, const PricePanel& prices);
void write_dropped_report(std::ostream& out, const std::vector<DroppedDate>& dropped);

bool is_iso_date(const std::string& text);

}  // namespace persistnet
