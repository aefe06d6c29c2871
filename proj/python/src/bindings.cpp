#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latwire/analysis.hpp"
#include "latwire/errors.hpp"
#include "latwire/oracle.hpp"
#include "latwire/rational.hpp"
#include "latwire/render.hpp"
#include "latwire/serialize.hpp"
#include "latwire/tree.hpp"
#include "latwire/wiring.hpp"

namespace py = pybind11;
using namespace latwire;

namespace {

py::object fraction(const Rational& r) {
  static auto* cls = new py::object(py::module_::import("fractions").attr("Fraction"));
  return (*cls)(to_fraction_string(r));
}

Rational from_python(const py::handle& h) { return parse_fraction(py::str(h).cast<std::string>()); }

py::tuple point(GridPoint p) { return py::make_tuple(p.x, p.y); }

py::dict report_dict(const ValidationReport& r) {
  py::dict d;
  d["valid"] = r.valid();
  d["k_vertex"] = r.k_vertex;
  d["k_edge"] = r.k_edge;
  py::list collisions;
  for (const auto& c : r.vertex_collisions) collisions.append(py::make_tuple(point(c.point), c.nodes));
  d["vertex_collisions"] = collisions;
  py::list overloads;
  for (const auto& o : r.edge_overloads)
    overloads.append(py::make_tuple(point(o.edge.a), point(o.edge.b), o.paths));
  d["edge_overloads"] = overloads;
  d["structural_errors"] = r.structural_errors;
  return d;
}

py::dict estimate_dict(const RatioEstimate& e) {
  py::dict d;
  d["plan"] = e.plan;
  d["total"] = e.total;
  d["volume"] = e.volume;
  d["vertices"] = e.vertices;
  d["ratio"] = fraction(e.ratio);
  d["plans_examined"] = e.plans_examined;
  return d;
}

}  // namespace

PYBIND11_MODULE(_latwire, m) {
  m.doc() = "Lattice wirings of ordered trees of maximum degree 3";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DegreeError>(m, "DegreeError", PyExc_ValueError);
  py::register_exception<OrderingError>(m, "OrderingError", PyExc_ValueError);
  py::register_exception<NoLegalPlanError>(m, "NoLegalPlanError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<OrderedTree>(m, "OrderedTree")
      .def(py::init<>())
      .def("__len__", &OrderedTree::size)
      .def_property_readonly("root", &OrderedTree::root)
      .def("children", [](const OrderedTree& t, NodeId v) {
        const auto c = t.children(v);
        return std::vector<NodeId>(c.begin(), c.end());
      })
      .def("parent", &OrderedTree::parent)
      .def("add_child", &OrderedTree::add_child)
      .def("leaves", &OrderedTree::leaves)
      .def("__eq__", [](const OrderedTree& a, const OrderedTree& b) { return a == b; })
      .def("__str__", [](const OrderedTree& t) { return to_text(t); })
      .def("__repr__", [](const OrderedTree& t) { return "OrderedTree('" + to_text(t) + "')"; });

  m.def("parse_tree", [](const std::string& text) { return parse_tree(text); }, py::arg("text"));
  m.def("to_text", &to_text);
  m.def("generate_path", &generate_path, py::arg("n"));
  m.def("generate_bn", &generate_bn, py::arg("n"));
  m.def("generate_sn", &generate_sn, py::arg("n"));
  m.def("random_tree", &random_tree, py::arg("n"), py::arg("seed"));
  m.def("enumerate_trees", &enumerate_trees, py::arg("n"));
  m.def("subtree_sizes", &subtree_sizes);
  m.def("with_stem", &with_stem);

  py::class_<Reduction>(m, "Reduction")
      .def(py::init<OrderedTree>())
      .def_property_readonly("tree", &Reduction::tree)
      .def("__len__", &Reduction::size)
      .def_property_readonly("leaf_count", &Reduction::leaf_count)
      .def("__eq__", [](const Reduction& a, const Reduction& b) { return a == b; })
      .def("__str__", [](const Reduction& r) { return to_text(r.tree()); });

  m.def("reduce", &reduce);
  m.def("subdivide", &subdivide, py::arg("reduction"), py::arg("plan"));
  m.def("satisfies_size_ordering", &satisfies_size_ordering);
  m.def("branch_depth", &branch_depth);

  py::class_<GridWiring>(m, "GridWiring")
      .def_property_readonly("vertices",
                             [](const GridWiring& w) {
                               py::list out;
                               for (auto p : w.vertices) out.append(point(p));
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const GridWiring& w) {
                               py::list out;
                               for (const auto& e : w.edges) {
                                 py::list path;
                                 for (auto p : e.path) path.append(point(p));
                                 out.append(py::make_tuple(e.from, e.to, path));
                               }
                               return out;
                             })
      .def("__eq__", [](const GridWiring& a, const GridWiring& b) { return a == b; })
      .def("to_json", &embedding_to_json);

  m.def("wire", &wire);
  m.def("volume", &volume);
  m.def("volume_by_formula", &volume_by_formula);
  m.def("conn", &conn);
  m.def("bounding_box", [](const GridWiring& w) {
    const Box b = bounding_box(w);
    return py::make_tuple(point(b.min), point(b.max));
  });
  m.def("validate", [](const GridWiring& w, int k) { return report_dict(validate_k_wiring(w, k)); }, py::arg("wiring"),
        py::arg("k") = 1);
  m.def("embedding_to_json", &embedding_to_json);
  m.def("parse_embedding", [](const std::string& text) { return parse_embedding(text).wiring; });
  m.def("render_svg", [](const GridWiring& w, const OrderedTree& t, const std::string& c) { return render_svg(w, t, c); },
        py::arg("wiring"), py::arg("tree"), py::arg("comment") = "");

  m.def("popcount", &popcount);
  m.def("leaf_rotations", &leaf_rotations);
  m.def("leaf_cost_upper", [](std::uint64_t l) { return fraction(leaf_cost_upper(l)); });
  m.def("spiral_leaf_positions", &spiral_leaf_positions);
  m.def("spiral_plan", [](int n) {
    py::list out;
    for (const auto& r : spiral_plan(n)) out.append(fraction(r));
    return out;
  });
  m.def("vsn_sum", [](int n) { return fraction(vsn_sum(n)); });
  m.def("vsn_closed_form", [](int n) { return fraction(vsn_closed_form(n)); });
  m.def("recurrence_table", [](int n_max) {
    const auto t = recurrence_table(n_max);
    py::list bound, refined;
    for (const auto& r : t.bound) bound.append(fraction(r));
    for (const auto& r : t.refined) refined.append(fraction(r));
    py::dict d;
    d["bound"] = bound;
    d["refined"] = refined;
    return d;
  });
  m.def("realize_plan", [](const Reduction& r, const py::list& plan, std::int64_t total) {
    Proportions p;
    for (auto h : plan) p.push_back(from_python(h));
    return realize_plan(r, p, total);
  });
  m.def("marginal_volume", [](const Reduction& r, std::size_t leaf, const LeafCounts& base) {
    return fraction(marginal_volume(r, leaf, base));
  });
  m.def("analysis_volume", &analysis_volume);
  m.def(
      "estimate_vr",
      [](const Reduction& r, std::int64_t total, const std::string& strategy, std::uint64_t budget) {
        SearchStrategy s;
        if (strategy == "exhaustive") {
          s = SearchStrategy::exhaustive;
        } else if (strategy == "greedy") {
          s = SearchStrategy::greedy;
        } else {
          throw std::invalid_argument("strategy must be 'exhaustive' or 'greedy'");
        }
        return estimate_dict(estimate_vr(r, total, s, budget));
      },
      py::arg("reduction"), py::arg("total"), py::arg("strategy") = "exhaustive",
      py::arg("budget") = kDefaultPlanBudget);

  m.def(
      "optimal_wiring",
      [](const OrderedTree& t, std::int64_t box, std::uint64_t budget) {
        OracleOptions o;
        o.box_half_width = box;
        o.budget = budget;
        const auto r = optimal_wiring(t, o);
        py::dict d;
        d["best_volume"] = r.best_volume;
        d["witness"] = r.witness;
        d["explored"] = r.explored;
        d["box_half_width"] = r.box_half_width;
        return d;
      },
      py::arg("tree"), py::arg("box_half_width") = 0, py::arg("budget") = kDefaultSearchBudget);
  m.def("exhaustive_vr", [](const Reduction& r, std::int64_t total) { return estimate_dict(exhaustive_vr(r, total)); });
}
