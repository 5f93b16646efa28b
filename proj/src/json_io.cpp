#include "ulocal/json_io.hpp"

namespace ulocal {

json ok_to_json(const OkElement& x) {
    return json{{"a", x.a()}, {"b", x.b()}};
}

OkElement ok_from_json(const PrimeContext& ctx, const json& j) {
    if (!j.contains("a") || !j.contains("b"))
        throw DomainError("ok_from_json: expected {\"a\": int, \"b\": int}");
    return OkElement(ctx, j.at("a").get<long long>(), j.at("b").get<long long>());
}

json herm_to_json(const HermMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(ok_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"p", m.ctx().p()}, {"precision", m.ctx().precision()}, {"entries", rows}};
}

LoadedMatrix herm_from_json(const json& j, long epsilon_override) {
    long p = j.at("p").get<long>();
    int precision = j.at("precision").get<int>();
    auto ctx = std::make_shared<PrimeContext>(p, precision, epsilon_override);
    const json& rows = j.at("entries");
    std::vector<std::vector<OkElement>> entries;
    for (const auto& row : rows) {
        std::vector<OkElement> r;
        for (const auto& cell : row) r.push_back(ok_from_json(*ctx, cell));
        entries.push_back(std::move(r));
    }
    HermMatrix m = HermMatrix::from_entries(*ctx, entries);
    return LoadedMatrix{ctx, m};
}

} // namespace ulocal
