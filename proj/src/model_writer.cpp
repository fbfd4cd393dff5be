#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ndgen/io.hpp"

namespace ndgen {

namespace {

/// Name fragments "i_j" per arc (1-based); the n-th parallel copy of (i, j) gets "_p<n>".
std::vector<std::string> arc_tags(const Graph& g)
{
    std::map<std::pair<NodeId, NodeId>, int> seen;
    std::vector<std::string> tags;
    tags.reserve(g.arcCount());
    for (const Arc& a : g.arcs) {
        const int copy = ++seen[{a.tail, a.head}];
        std::string tag = std::to_string(a.tail + 1) + '_' + std::to_string(a.head + 1);
        if (copy > 1)
            tag += "_p" + std::to_string(copy);
        tags.push_back(std::move(tag));
    }
    return tags;
}

struct Term {
    double coef;
    std::string var;
};

/// Row-wise view of model (1)-(6) shared by both writers.
struct ModelRows {
    struct Row {
        std::string name;
        char sense; // 'E' or 'L'
        double rhs;
        std::vector<Term> terms;
    };
    std::vector<Term> objective;
    std::vector<Row> rows;
    std::vector<std::string> designVars;
    std::vector<std::string> flowVars;
};

ModelRows build_rows(const DetInstance& inst)
{
    const std::size_t N = inst.nodeCount(), A = inst.arcCount(), K = inst.commodityCount();
    const std::vector<std::string> tags = arc_tags(inst.graph);
    auto yName = [&](std::size_t a) { return "y_" + tags[a]; };
    auto xName = [&](std::size_t a, std::size_t k) { return "x_" + tags[a] + '_' + std::to_string(k + 1); };

    ModelRows m;
    for (std::size_t a = 0; a < A; ++a) {
        m.designVars.push_back(yName(a));
        m.objective.push_back({inst.fixedCost[a], yName(a)});
    }
    for (std::size_t a = 0; a < A; ++a)
        for (std::size_t k = 0; k < K; ++k) {
            m.flowVars.push_back(xName(a, k));
            m.objective.push_back({inst.varCostAt(a, k), xName(a, k)});
        }

    for (std::size_t k = 0; k < K; ++k) {
        const std::vector<double> w = node_balance(inst, k);
        for (std::size_t i = 0; i < N; ++i) {
            ModelRows::Row row{"flow_" + std::to_string(i + 1) + '_' + std::to_string(k + 1), 'E', w[i], {}};
            for (std::size_t a = 0; a < A; ++a) {
                if (inst.graph.arcs[a].tail == i)
                    row.terms.push_back({1.0, xName(a, k)});
                else if (inst.graph.arcs[a].head == i)
                    row.terms.push_back({-1.0, xName(a, k)});
            }
            m.rows.push_back(std::move(row));
        }
    }
    for (std::size_t a = 0; a < A; ++a) {
        ModelRows::Row row{"cap_" + tags[a], 'L', 0.0, {}};
        for (std::size_t k = 0; k < K; ++k)
            row.terms.push_back({1.0, xName(a, k)});
        row.terms.push_back({-inst.capacity[a], yName(a)});
        m.rows.push_back(std::move(row));
    }
    if (inst.useComCapacity)
        for (std::size_t a = 0; a < A; ++a)
            for (std::size_t k = 0; k < K; ++k)
                m.rows.push_back({"bnd_" + tags[a] + '_' + std::to_string(k + 1),
                                  'L',
                                  0.0,
                                  {{1.0, xName(a, k)}, {-inst.comCapacityAt(a, k), yName(a)}}});
    return m;
}

void append_terms(std::string& out, const std::vector<Term>& terms, const std::string& fallbackVar)
{
    bool first = true;
    int onLine = 0;
    for (const Term& t : terms) {
        if (t.coef == 0.0)
            continue;
        if (onLine == 8) {
            out += "\n   ";
            onLine = 0;
        }
        if (t.coef < 0.0)
            out += " - " + format_real(-t.coef);
        else
            out += first ? " " + format_real(t.coef) : " + " + format_real(t.coef);
        out += ' ' + t.var;
        first = false;
        ++onLine;
    }
    if (first)
        out += " 0 " + fallbackVar;
}

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width)
        s.append(width - s.size(), ' ');
    return s;
}

} // namespace

std::string write_lp(const DetInstance& inst)
{
    const ModelRows m = build_rows(inst);
    const std::string anyVar = m.designVars.empty() ? std::string("y") : m.designVars.front();

    std::string out = "\\ Multicommodity capacitated fixed-charge network design\n";
    out += "\\ " + std::to_string(inst.nodeCount()) + " nodes, " + std::to_string(inst.arcCount()) + " arcs, " +
           std::to_string(inst.commodityCount()) + " commodities\n";
    out += "Minimize\n obj:";
    append_terms(out, m.objective, anyVar);
    out += "\nSubject To\n";
    for (const ModelRows::Row& row : m.rows) {
        out += ' ' + row.name + ':';
        append_terms(out, row.terms, anyVar);
        out += row.sense == 'E' ? " = " : " <= ";
        out += format_real(row.rhs) + '\n';
    }
    out += "Bounds\n";
    for (const std::string& y : m.designVars)
        out += " 0 <= " + y + " <= 1\n";
    out += "Binaries\n";
    for (const std::string& y : m.designVars)
        out += ' ' + y + '\n';
    out += "End\n";
    return out;
}

std::string write_mps(const DetInstance& inst, std::string_view name)
{
    const ModelRows m = build_rows(inst);

    // Column-wise entries: objective first, then constraint rows in row order.
    std::map<std::string, std::vector<std::pair<std::string, double>>> columns;
    for (const Term& t : m.objective)
        if (t.coef != 0.0)
            columns[t.var].push_back({"OBJ", t.coef});
    for (const ModelRows::Row& row : m.rows)
        for (const Term& t : row.terms)
            if (t.coef != 0.0)
                columns[t.var].push_back({row.name, t.coef});

    std::string out = "NAME          " + std::string(name) + '\n';
    out += "ROWS\n N  OBJ\n";
    for (const ModelRows::Row& row : m.rows)
        out += ' ' + std::string(1, row.sense) + "  " + row.name + '\n';

    out += "COLUMNS\n";
    auto emit = [&](const std::string& var) {
        std::vector<std::pair<std::string, double>>& entries = columns[var];
        if (entries.empty()) // keep every column declared
            entries.push_back({"OBJ", 0.0});
        for (const auto& [rowName, coef] : entries)
            out += "    " + pad(var, 12) + ' ' + pad(rowName, 12) + ' ' + format_real(coef) + '\n';
    };
    out += "    MARKER                 'MARKER'                 'INTORG'\n";
    for (const std::string& y : m.designVars)
        emit(y);
    out += "    MARKER                 'MARKER'                 'INTEND'\n";
    for (const std::string& x : m.flowVars)
        emit(x);

    out += "RHS\n";
    for (const ModelRows::Row& row : m.rows)
        if (row.rhs != 0.0)
            out += "    " + pad("RHS", 12) + ' ' + pad(row.name, 12) + ' ' + format_real(row.rhs) + '\n';

    out += "BOUNDS\n";
    for (const std::string& y : m.designVars)
        out += " UP " + pad("BND", 12) + ' ' + pad(y, 12) + " 1\n";
    out += "ENDATA\n";
    return out;
}

} // namespace ndgen
