#include "bankbench/data/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bankbench/core/error.hpp"

namespace bankbench::data {

namespace {

enum class Kind { healthy, distressed, censored, zombie, leveraged_liquid, illiquid };

struct CountryInfo {
    const char* code;
    const char* regions[4];
};

constexpr CountryInfo k_countries[] = {
    {"PL", {"Mazowieckie", "Slaskie", "Wielkopolskie", "Malopolskie"}},
    {"HU", {"Bacs-Kiskun", "Pest", "Hajdu-Bihar", "Baranya"}},
    {"CZ", {"Praha", "Jihomoravsky", "Moravskoslezsky", "Stredocesky"}},
    {"SK", {"Bratislavsky", "Kosicky", "Zilinsky", "Presovsky"}},
};

constexpr const char* k_sectors[] = {
    "Manufacturing", "Construction", "Retail", "Wholesale", "Transport",
    "RealEstate",    "ICT",          "Agriculture", "Services", "Energy",
};
constexpr int k_sector_naics2[] = {31, 23, 44, 42, 48, 53, 51, 11, 56, 22};

constexpr const char* k_legal_forms[] = {"Ltd", "JSC", "LP", "SP"};

// Per-year ratio targets for the three criteria axes plus a revenue growth
// draw. For distressed tracks the stage s counts years until the final year.
struct YearTargets {
    double eq_ta = 0.3;
    double ebitda_ta = 0.08;
    double cr = 1.4;
    double growth = 0.03;
    bool force_loss = false; // spike financial costs until net profit < 0
};

struct CompanyTraits {
    Kind kind = Kind::healthy;
    double u = 0.5;        // per-company severity blend reused across years
    double base_health = 1.0;
    bool thin_margin = false;    // healthy quirk: occasional loss years
    bool negative_equity = false; // healthy quirk: persistent mild eq<0
    int dip_stage = -1;           // years before the end of a one-off crisis year
    int dip_stage2 = -1;          // long tracks can take a second crisis year
};

double lerp(double a, double b, double t) { return a + (b - a) * t; }

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
    double normal(double m, double s) { return std::normal_distribution<double>(m, s)(gen_); }
    int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }
    bool chance(double p) { return uniform(0.0, 1.0) < p; }
    std::mt19937_64& gen() { return gen_; }

private:
    std::mt19937_64 gen_;
};

double severity_depth(double cap, double u, Rng& rng) {
    // Log-uniform severity saturated into a bounded band: deep failures
    // coexist with ratios sitting within noise of zero, and no mass piles on
    // the cap.
    double d = std::pow(10.0, -1.6 * u);
    double x = 1.7 * d * std::exp(rng.normal(0.0, 0.35));
    return cap * x / (1.0 + x);
}

YearTargets distress_stage_targets(int s, const CompanyTraits& tr, Rng& rng) {
    YearTargets t;
    if (s == 0) {
        // A terminal year is one more draw from the company's own severity
        // process; only the liquidity slide below the cutoff sets it apart
        // from the struggling years before it. Liquidity lands just under the
        // cutoff, exactly as it does in surviving years inside the cutoff,
        // because deaths happen at the covenant breach rather than long
        // after it.
        t.eq_ta = -std::max(severity_depth(0.35, tr.u, rng), 0.005);
        t.ebitda_ta = -std::max(severity_depth(0.18, tr.u, rng), 0.003);
        t.cr = 0.6 - std::max(std::fabs(rng.normal(0.0, 0.035)), 0.002);
        t.growth = rng.normal(-0.2, 0.13);
        return t;
    }
    // Pre-terminal years share one struggling profile across the distressed,
    // censored, and confuser tracks, with solvency depth drawn from the same
    // per-company severity process as the terminal year and working capital
    // managed hand-to-mouth, so liquidity clusters tightly on both sides of
    // the cutoff. Surviving years inside the cutoff are what make the signal
    // non-additive; no weighting of severity ranks them below the mildest
    // terminal years.
    auto wander = [&] { return std::clamp(tr.u + rng.normal(0.0, 0.12), 0.0, 1.0); };
    t.eq_ta = rng.chance(0.08) ? rng.uniform(0.0, 0.02)
                               : -std::max(severity_depth(0.35, wander(), rng), 0.005);
    t.ebitda_ta = rng.chance(0.10) ? rng.uniform(0.0, 0.03)
                                   : -std::max(severity_depth(0.18, wander(), rng), 0.003);
    // The year before the last filing still hangs above the line, so a final
    // year always crosses the cutoff rather than merely sitting under it.
    double r = s == 1 ? rng.uniform(0.45, 1.0) : rng.uniform(0.0, 1.0);
    if (r < 0.45)
        t.cr = 0.6 - std::max(std::fabs(rng.normal(0.0, 0.035)), 0.002);
    else if (r < 0.75)
        t.cr = 0.6 + std::max(std::fabs(rng.normal(0.0, 0.04)), 0.002);
    else
        t.cr = rng.uniform(0.6, 1.05);
    t.growth = rng.normal(-0.1, 0.12);
    return t;
}

YearTargets confuser_targets(const CompanyTraits& tr, int s, Rng& rng) {
    // Replay the distress trajectory, but hold the last reported year just
    // across one rule boundary. That year is entered from the shared
    // struggling profile exactly like a terminal year, so the escaped axis is
    // the only systematic difference between a confuser and a true positive.
    YearTargets t = distress_stage_targets(s, tr, rng);
    if (s > 0) return t;
    switch (tr.kind) {
    case Kind::zombie:
        t.ebitda_ta = -t.ebitda_ta;
        t.force_loss = true; // EBITDA is positive in these years; net profit stays negative
        break;
    case Kind::leveraged_liquid:
        t.cr = 0.6 + rng.uniform(0.002, 0.03);
        break;
    case Kind::illiquid:
        t.eq_ta = -t.eq_ta;
        break;
    default:
        break;
    }
    return t;
}

YearTargets dip_targets(Rng& rng) {
    // A one-off crisis year lands deeper inside the rule box than any
    // terminal year ever reaches, and the books recover afterwards. Nothing
    // in the crisis year itself announces the recovery, so severity alone
    // cannot separate these years from genuine final filings.
    YearTargets t;
    t.eq_ta = -rng.uniform(0.15, 0.55);
    t.ebitda_ta = -rng.uniform(0.17, 0.55);
    t.cr = rng.uniform(0.15, 0.55);
    t.growth = rng.normal(-0.35, 0.15);
    return t;
}

YearTargets healthy_targets(const CompanyTraits& tr, double health, bool shock, Rng& rng) {
    YearTargets t;
    if (tr.negative_equity) {
        t.eq_ta = -rng.uniform(0.01, 0.2);
        t.cr = std::max(0.85 + 0.6 * std::tanh(0.7 * health) + rng.normal(0.0, 0.1), 0.65);
    } else {
        t.eq_ta = 0.05 + 0.45 * std::tanh(0.8 * health) + rng.normal(0.0, 0.04);
        t.cr = std::max(0.65 + 0.55 * std::tanh(0.7 * health) + rng.normal(0.0, 0.3), 0.15);
    }
    t.ebitda_ta = 0.02 + 0.1 * std::tanh(0.9 * health) + rng.normal(0.0, 0.07);
    t.growth = rng.normal(0.03, 0.1);
    if (shock) {
        t.ebitda_ta -= rng.uniform(0.02, 0.22);
        if (!tr.negative_equity) t.cr = std::max(t.cr - rng.uniform(0.0, 0.35), 0.15);
        t.growth = rng.normal(-0.18, 0.13);
    }
    t.force_loss = tr.thin_margin && rng.chance(0.3);
    return t;
}

struct SizeState {
    double total_assets = 0.0;
    double revenue = 0.0;
};

RawStatement synthesize_statement(const YearTargets& t, SizeState& size, Rng& rng) {
    RawStatement st;
    double ta = size.total_assets;
    double revenue = size.revenue;

    double equity = t.eq_ta * ta;
    double tl = ta - equity;
    double ebitda = t.ebitda_ta * ta;
    double dep_ta = rng.uniform(0.02, 0.06);
    double dep = dep_ta * ta;
    double ebit = ebitda - dep;

    // Interest scales with leverage for every track so financing costs carry
    // no information beyond the balance sheet that produced them.
    double fin = rng.uniform(0.015, 0.045) * std::max(tl, 0.05 * ta);
    if (t.force_loss) fin = std::max(fin, ebit * rng.uniform(1.02, 1.2));
    double pretax = ebit - fin;
    double np = pretax > 0.0 ? pretax * 0.81 : pretax;

    double cr = std::max(t.cr, 1e-3);
    double ca = rng.uniform(0.25, 0.75) * ta;
    // Long-term liabilities must stay non-negative: current liabilities are
    // pinned by the current-ratio target, so cap current assets instead.
    if (tl > 0.0 && ca > cr * tl) ca = cr * tl * rng.uniform(0.7, 0.95);
    ca = std::max(ca, 0.01 * ta);
    double cl = ca / cr;
    double ltl = tl - cl;
    if (ltl < 0.0) ltl = 0.0; // only reachable when tl <= 0 edge cases

    double inv_frac = rng.uniform(0.1, 0.45);
    double rec_frac = rng.uniform(0.1, 0.45);
    double inventories = ca * inv_frac;
    double receivables = ca * rec_frac;
    double cash = ca - inventories - receivables;

    double share_capital = rng.uniform(0.01, 0.1) * ta;
    double sales = revenue * rng.uniform(0.85, 1.0);

    st.total_assets = ta;
    st.fixed_assets = ta - ca;
    st.current_assets = ca;
    st.inventories = inventories;
    st.receivables = receivables;
    st.cash = cash;
    st.quick_assets = ca - inventories;
    st.equity = equity;
    st.share_capital = share_capital;
    st.retained_profit = equity - share_capital;
    st.total_liabilities = tl;
    st.current_liabilities = cl;
    st.long_term_liabilities = ltl;
    st.total_operating_revenue = revenue;
    st.sales = sales;
    st.gross_profit = revenue * rng.uniform(0.15, 0.45);
    st.net_profit = np;
    st.ebit = ebit;
    st.ebitda = ebitda;
    st.depreciation = dep;
    st.financial_costs = fin;
    st.interest_expense = fin * rng.uniform(0.6, 1.0);
    st.operating_expenses = std::max(revenue - ebitda, 0.0);
    st.total_costs = std::max(revenue - np, 0.0);
    st.cash_flow = np + dep;
    return st;
}

bool satisfies_default_rule(const RawStatement& st) {
    if (!st.total_assets || !st.equity || !st.ebitda || !st.current_assets || !st.current_liabilities)
        return false;
    if (*st.total_assets == 0.0 || *st.current_liabilities == 0.0) return false;
    return *st.equity / *st.total_assets < 0.0 && *st.ebitda / *st.total_assets < 0.0 &&
           *st.current_assets / *st.current_liabilities < 0.6;
}

// Fields eligible for missingness injection. Rule inputs and headline income
// fields stay dense so labeling is exact and key ratios stay populated.
constexpr const char* k_maskable[] = {
    "fixed_assets",  "inventories",        "receivables",   "cash",
    "quick_assets",  "share_capital",      "retained_profit", "gross_profit",
    "depreciation",  "long_term_liabilities", "sales",      "operating_expenses",
    "total_costs",   "cash_flow",          "financial_costs", "interest_expense",
};

// Companies on the distress-adjacent tracks file abbreviated statements, as
// small struggling companies commonly do: the balance-sheet and P&L detail is
// absent in every year, while the headline fields the distress rule reads
// stay populated.
constexpr const char* k_abbreviated[] = {
    "fixed_assets",  "inventories",        "receivables",   "cash",
    "quick_assets",  "share_capital",      "retained_profit", "gross_profit",
    "depreciation",  "long_term_liabilities", "operating_expenses",
    "total_costs",   "cash_flow",          "financial_costs", "interest_expense",
    "ebit",
};

} // namespace

MacroTable generate_macro(int year_start, int year_end) {
    struct Base {
        const char* code;
        double level;
        double phase;
    };
    constexpr Base bases[] = {
        {"PL", 520000.0, 0.3}, {"HU", 150000.0, 1.1}, {"CZ", 240000.0, 1.9}, {"SK", 98000.0, 2.6}};
    MacroTable macro;
    for (const auto& b : bases) {
        for (int y = year_start - 1; y <= year_end; ++y) {
            double trend = b.level * std::pow(1.03, y - 2000);
            double cycle = 1.0 + 0.02 * std::sin(0.9 * (y - 2000) + b.phase);
            macro.gdp[{b.code, y}] = trend * cycle;
        }
    }
    return macro;
}

Panel generate_panel(const SynthConfig& cfg) {
    if (cfg.n_companies == 0) throw config_error("synthetic: n_companies must be positive");
    if (cfg.year_end < cfg.year_start) throw config_error("synthetic: year_end before year_start");
    if (cfg.target_distress_rate < 0.0 || cfg.target_distress_rate > 0.5)
        throw config_error("synthetic: target_distress_rate out of range");
    int span = cfg.year_end - cfg.year_start + 1;
    bool censor_in_span = cfg.censor_year >= cfg.year_start && cfg.censor_year <= cfg.year_end;
    bool has_long_tracks = cfg.target_distress_rate > 0.0 || cfg.zombie_fraction > 0.0 ||
                           cfg.leveraged_liquid_fraction > 0.0 || cfg.illiquid_fraction > 0.0;
    if (has_long_tracks) {
        int distress_last_cap = censor_in_span ? cfg.censor_year - 1 : cfg.year_end;
        if (distress_last_cap - cfg.year_start + 1 < 7)
            throw config_error("synthetic: year span too short for distress trajectories");
        if (censor_in_span && cfg.censored_fraction > 0.0 && cfg.target_distress_rate > 0.0 &&
            cfg.censor_year - cfg.year_start + 1 < 7)
            throw config_error("synthetic: censor_year too close to year_start for censored tracks");
    }

    auto n = cfg.n_companies;
    auto n_distressed = static_cast<std::size_t>(std::llround(cfg.target_distress_rate * static_cast<double>(n)));
    auto n_censored = censor_in_span
                          ? static_cast<std::size_t>(std::llround(cfg.censored_fraction * static_cast<double>(n_distressed)))
                          : 0;
    auto n_zombie = static_cast<std::size_t>(std::llround(cfg.zombie_fraction * static_cast<double>(n)));
    auto n_leveraged = static_cast<std::size_t>(std::llround(cfg.leveraged_liquid_fraction * static_cast<double>(n)));
    auto n_illiquid = static_cast<std::size_t>(std::llround(cfg.illiquid_fraction * static_cast<double>(n)));
    if (n_distressed + n_censored + n_zombie + n_leveraged + n_illiquid > n)
        throw config_error("synthetic: subpopulation fractions exceed company count");

    std::vector<Kind> kinds(n, Kind::healthy);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n_distressed; ++i) kinds[pos++] = Kind::distressed;
    for (std::size_t i = 0; i < n_censored; ++i) kinds[pos++] = Kind::censored;
    for (std::size_t i = 0; i < n_zombie; ++i) kinds[pos++] = Kind::zombie;
    for (std::size_t i = 0; i < n_leveraged; ++i) kinds[pos++] = Kind::leveraged_liquid;
    for (std::size_t i = 0; i < n_illiquid; ++i) kinds[pos++] = Kind::illiquid;

    Rng rng(cfg.seed);
    std::shuffle(kinds.begin(), kinds.end(), rng.gen());

    Panel panel;
    panel.companies.reserve(n);

    for (std::size_t i = 0; i < n; ++i) {
        CompanyTraits tr;
        tr.kind = kinds[i];
        tr.u = rng.uniform(0.0, 1.0);
        tr.base_health = rng.uniform(0.4, 1.6);
        tr.thin_margin = rng.chance(0.12);
        tr.negative_equity = tr.kind == Kind::healthy && rng.chance(0.06);

        int length, first_year;
        if (tr.kind == Kind::distressed || tr.kind == Kind::zombie || tr.kind == Kind::leveraged_liquid ||
            tr.kind == Kind::illiquid) {
            // Confusers share the distressed tracks' length and end-year
            // distribution so reporting-span metadata carries no label signal.
            // End years are sampled directly; deriving them from uniform start
            // years would pile the longer tracks onto the last panel years.
            int last_cap = censor_in_span ? cfg.censor_year - 1 : cfg.year_end;
            int max_len = last_cap - cfg.year_start + 1;
            length = rng.uniform_int(7, std::min(12, max_len));
            int last = rng.uniform_int(cfg.year_start + length - 1, last_cap);
            first_year = last - length + 1;
        } else if (tr.kind == Kind::censored) {
            length = rng.uniform_int(7, std::min(12, cfg.censor_year - cfg.year_start + 1));
            first_year = cfg.censor_year - length + 1;
        } else {
            length = rng.uniform_int(2, span);
            first_year = rng.uniform_int(cfg.year_start, cfg.year_end - length + 1);
        }
        int last_year = first_year + length - 1;

        // Crisis dips stay clear of the final years so the transition into a
        // terminal or endgame year is always entered from the ordinary
        // struggling profile.
        if (tr.kind == Kind::healthy) {
            if (length >= 3 && rng.chance(0.10)) tr.dip_stage = rng.uniform_int(1, length - 2);
        } else if (rng.chance(0.8)) {
            tr.dip_stage = rng.uniform_int(2, length - 1);
            if (length >= 8 && rng.chance(0.5)) tr.dip_stage2 = rng.uniform_int(2, length - 1);
        }

        CompanyHistory company;
        char idbuf[16];
        std::snprintf(idbuf, sizeof(idbuf), "C%07zu", i + 1);
        company.company_id = idbuf;

        int country_idx = rng.uniform_int(0, 3);
        const auto& country = k_countries[country_idx];
        int sector_idx = rng.uniform_int(0, 9);
        int naics2 = k_sector_naics2[sector_idx];
        int naics3 = naics2 * 10 + rng.uniform_int(1, 9);
        int naics_primary = naics3 * 100 + rng.uniform_int(10, 99);
        bool multi = rng.chance(0.15);
        int naics_secondary = multi ? (k_sector_naics2[rng.uniform_int(0, 9)] * 10 + rng.uniform_int(1, 9)) * 100 +
                                          rng.uniform_int(10, 99)
                                    : 0;
        std::string region = country.regions[rng.uniform_int(0, 3)];
        std::string legal_form = k_legal_forms[rng.uniform_int(0, 3)];
        std::string status = rng.chance(0.97) ? "Active" : "Dormant";
        int incorporation_year = first_year - rng.uniform_int(0, 30);

        SizeState size;
        size.total_assets = std::exp(rng.normal(std::log(2000.0), 1.2));
        size.revenue = size.total_assets * rng.uniform(0.7, 2.2);
        std::string band = size.total_assets < 500.0     ? "1-9 employees"
                           : size.total_assets < 5000.0  ? "10-49 employees"
                           : size.total_assets < 50000.0 ? "50-249 employees"
                                                         : "250+ employees";

        double health = tr.base_health;
        for (int year = first_year; year <= last_year; ++year) {
            YearTargets t;
            int stage = last_year - year;
            if (tr.kind == Kind::healthy)
                health = 0.7 * health + 0.3 * tr.base_health + rng.normal(0.0, 0.12);
            if (stage == tr.dip_stage || stage == tr.dip_stage2) {
                t = dip_targets(rng);
            } else if (tr.kind == Kind::distressed || tr.kind == Kind::censored) {
                t = distress_stage_targets(stage, tr, rng);
            } else if (tr.kind == Kind::healthy) {
                t = healthy_targets(tr, health, rng.chance(0.12), rng);
            } else {
                t = confuser_targets(tr, stage, rng);
            }

            if (year > first_year) {
                size.revenue *= std::max(1.0 + t.growth, 0.2);
                size.total_assets *= std::max(1.0 + 0.7 * t.growth + rng.normal(0.0, 0.03), 0.25);
            }

            CompanyYearRecord rec;
            rec.company_id = company.company_id;
            rec.country = country.code;
            rec.state_region = region;
            rec.legal_form = legal_form;
            rec.employees_band = band;
            rec.operational_status = status;
            rec.sector = k_sectors[sector_idx];
            rec.naics_primary = naics_primary;
            rec.naics_secondary = naics_secondary;
            rec.naics_2digit = naics2;
            rec.naics_3digit = naics3;
            rec.has_multiple_industries = multi;
            rec.incorporation_year = incorporation_year;
            rec.report_year = year;
            rec.statement = synthesize_statement(t, size, rng);
            company.records.push_back(std::move(rec));
        }

        // Only planned distress tracks may end inside the rule box.
        if (tr.kind != Kind::distressed && tr.kind != Kind::censored) {
            auto& st = company.records.back().statement;
            if (satisfies_default_rule(st)) {
                double ca = *st.current_assets;
                double cl = ca / rng.uniform(0.65, 1.0);
                st.current_liabilities = cl;
                st.long_term_liabilities = std::max(*st.total_liabilities - cl, 0.0);
            }
        }

        if (tr.kind != Kind::healthy) {
            for (auto& rec : company.records)
                for (const char* name : k_abbreviated)
                    rec.statement.*(find_statement_field(name)->member) = std::nullopt;
        } else {
            for (auto& rec : company.records) {
                bool final_record = &rec == &company.records.back();
                for (const char* name : k_maskable) {
                    if (!rng.chance(cfg.missing_rate)) continue;
                    // keep final records fully populated for rule-relevant checks
                    if (final_record) continue;
                    rec.statement.*(find_statement_field(name)->member) = std::nullopt;
                }
            }
        }

        panel.companies.push_back(std::move(company));
    }

    validate_panel(panel);
    attach_macro(panel, generate_macro(cfg.year_start, cfg.year_end));
    return panel;
}

} // namespace bankbench::data
