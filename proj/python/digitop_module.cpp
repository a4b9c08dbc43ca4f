// Python bindings. Images are passed around as opaque handles; points are
// tuples of ints and maps are lists of (point, image point) pairs, the same
// shape as the JSON map files.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "digitop/cli/commands.hpp"
#include "digitop/cli/spec.hpp"
#include "digitop/constructive.hpp"
#include "digitop/product.hpp"
#include "digitop/search.hpp"

namespace py = pybind11;
using namespace digitop;

namespace {

using PyPoint = std::vector<Coord>;
using PyPairs = std::vector<std::pair<PyPoint, PyPoint>>;

py::tuple to_py(const Point& p) {
  py::tuple t(p.dimension());
  for (std::size_t i = 0; i < p.dimension(); ++i) t[i] = p[i];
  return t;
}

py::list to_py(const DigitalMap& f) {
  py::list out;
  for (const auto& [x, y] : f.pairs()) out.append(py::make_tuple(to_py(x), to_py(y)));
  return out;
}

DigitalMap to_map(const ImagePtr& img, const PyPairs& pairs) {
  std::vector<std::pair<Point, Point>> pts;
  pts.reserve(pairs.size());
  for (const auto& [x, y] : pairs) pts.emplace_back(Point(x), Point(y));
  return DigitalMap::from_pairs(img, img, pts);
}

std::vector<Bounds> to_bounds(const std::vector<std::pair<Coord, Coord>>& b) {
  std::vector<Bounds> out;
  for (const auto& [lo, hi] : b) out.push_back({lo, hi});
  return out;
}

// Runs a CLI command and hands back its certificate as a JSON string and the
// exit code.
std::pair<std::string, int> certificate(const cli::CommandResult& r) {
  return {r.certificate.dump(), r.exit_code};
}

}  // namespace

PYBIND11_MODULE(_digitop, m) {
  m.doc() = "Digital images, continuous self-maps, and approximate fixed points";

  auto base = py::register_exception<Error>(m, "DigitopError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DiscontinuousMap>(m, "DiscontinuousMap", base.ptr());
  py::register_exception<NoApproximateFixedPoint>(m, "NoApproximateFixedPoint", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<CertificateFailure>(m, "CertificateFailure", base.ptr());

  py::class_<DigitalImage, std::shared_ptr<DigitalImage>>(m, "Image")
      .def_property_readonly("size", &DigitalImage::size)
      .def_property_readonly("dimension", &DigitalImage::dimension)
      .def_property_readonly("rule", [](const DigitalImage& img) { return img.rule().describe(); })
      .def("vertices", [](const DigitalImage& img) {
        py::list out;
        for (const auto& p : img.vertices()) out.append(to_py(p));
        return out;
      })
      .def("edges", [](const DigitalImage& img) {
        py::list out;
        for (const auto& [a, b] : img.edges()) {
          out.append(py::make_tuple(to_py(img.vertex(a)), to_py(img.vertex(b))));
        }
        return out;
      })
      .def("adjacent", [](const DigitalImage& img, const PyPoint& a, const PyPoint& b) {
        return img.adjacent(img.index_of(Point(a)), img.index_of(Point(b)));
      })
      .def("neighborhood", [](const DigitalImage& img, const PyPoint& x, bool closed) {
        py::list out;
        for (VertexId v : neighborhood(img, img.index_of(Point(x)), closed)) {
          out.append(to_py(img.vertex(v)));
        }
        return out;
      }, py::arg("x"), py::arg("closed") = false)
      .def("fingerprint", [](const DigitalImage& img) { return cli::fingerprint(img); })
      .def("__len__", &DigitalImage::size)
      .def("__repr__", [](const DigitalImage& img) {
        return "<digitop.Image " + std::to_string(img.size()) + " vertices, " +
               img.rule().describe() + ">";
      });

  // Handles are shared_ptr<DigitalImage>; the library wants shared_ptr<const>.
  auto cptr = [](const std::shared_ptr<DigitalImage>& p) { return ImagePtr(p); };
  auto mptr = [](const ImagePtr& p) { return std::const_pointer_cast<DigitalImage>(p); };

  m.def("image_from_json", [=](const std::string& text) {
    return mptr(cli::build_image(cli::parse_image_spec(cli::Json::parse(text))));
  }, py::arg("spec_json"), "Builds an image from a JSON image spec.");
  m.def("make_box", [=](const std::vector<std::pair<Coord, Coord>>& bounds, int u) {
    return mptr(share(make_box(to_bounds(bounds), u)));
  }, py::arg("bounds"), py::arg("u"));
  m.def("np_product", [=](const std::shared_ptr<DigitalImage>& x,
                          const std::shared_ptr<DigitalImage>& y) {
    return mptr(np_product(cptr(x), cptr(y)).image);
  });

  m.def("cu_adjacent", [](const PyPoint& x, const PyPoint& y, int u) {
    return cu_adjacent(Point(x), Point(y), u);
  }, py::arg("x"), py::arg("y"), py::arg("u"));
  m.def("is_connected", [](const DigitalImage& img) { return is_connected(img); });
  m.def("is_tree", [](const DigitalImage& img) { return is_tree(img); });

  m.def("is_continuous", [=](const std::shared_ptr<DigitalImage>& img, const PyPairs& f) {
    return is_continuous(to_map(cptr(img), f));
  }, py::arg("image"), py::arg("map"));
  m.def("approximate_fixed_points", [=](const std::shared_ptr<DigitalImage>& img,
                                        const PyPairs& f) {
    const auto map = to_map(cptr(img), f);
    py::list out;
    for (VertexId v : approximate_fixed_points(map)) out.append(to_py(img->vertex(v)));
    return out;
  }, py::arg("image"), py::arg("map"));

  m.def("decide_afpp", [=](const std::shared_ptr<DigitalImage>& img, std::size_t max_vertices,
                           std::uint64_t max_nodes) {
    const auto v = decide_afpp(cptr(img), SearchBudget{max_vertices, max_nodes, 0});
    py::dict out;
    out["verdict"] = to_string(v.status);
    out["exhaustive"] = v.exhaustive;
    out["nodes_explored"] = v.nodes_explored;
    out["witness"] = v.witness ? py::object(to_py(*v.witness)) : py::object(py::none());
    return out;
  }, py::arg("image"), py::arg("max_vertices") = 14, py::arg("max_nodes") = 100'000'000);
  m.def("count_continuous_self_maps", [=](const std::shared_ptr<DigitalImage>& img,
                                          std::size_t max_vertices, std::uint64_t max_nodes) {
    return enumerate_continuous_self_maps(cptr(img), SearchBudget{max_vertices, max_nodes, 0},
                                          nullptr);
  }, py::arg("image"), py::arg("max_vertices") = 14, py::arg("max_nodes") = 100'000'000);
  m.def("random_continuous_self_map", [=](const std::shared_ptr<DigitalImage>& img,
                                          std::uint64_t seed) {
    return to_py(random_continuous_self_map(cptr(img), seed));
  }, py::arg("image"), py::arg("seed") = 0);

  m.def("tree_afp", [=](const std::shared_ptr<DigitalImage>& img, const PyPairs& f,
                        std::optional<PyPoint> root) {
    auto ip = cptr(img);
    const VertexId r = root ? img->index_of(Point(*root)) : 0;
    return to_py(img->vertex(tree_afp(tree_structure(ip, r), to_map(ip, f))));
  }, py::arg("image"), py::arg("map"), py::arg("root") = py::none());
  m.def("box_afp", [](const std::vector<std::pair<Coord, Coord>>& bounds, const PyPairs& f) {
    const auto b = to_bounds(bounds);
    auto img = share(make_box(b, static_cast<int>(b.size())));
    return to_py(box_afp(b, to_map(img, f)));
  }, py::arg("bounds"), py::arg("map"));
  m.def("np_equals_cu", [](const DigitalImage& x, const DigitalImage& y) {
    const auto c = np_equals_cu(x, y);
    py::object d = py::none();
    if (c.first_discrepancy) {
      d = py::make_tuple(to_py(c.first_discrepancy->first), to_py(c.first_discrepancy->second));
    }
    return py::make_tuple(c.equal, d);
  });

  m.def("command_decide_afpp", [](const std::string& spec) {
    return certificate(cli::guarded("decide-afpp", [&] {
      return cli::cmd_decide_afpp(cli::Json::parse(spec), {});
    }));
  }, py::arg("spec_json"), "Certificate JSON and exit code, as the command-line tool gives.");
  m.def("command_find_afp", [](const std::string& spec, const std::string& map,
                               const std::string& finder) {
    return certificate(cli::guarded("find-afp", [&] {
      return cli::cmd_find_afp(cli::Json::parse(spec), cli::Json::parse(map), finder);
    }));
  }, py::arg("spec_json"), py::arg("map_json"), py::arg("finder") = "auto");
  m.def("verify_certificate", [](const std::string& cert) {
    return certificate(cli::guarded("verify-certificate", [&] {
      return cli::cmd_verify_certificate(cli::Json::parse(cert));
    }));
  }, py::arg("certificate_json"));
}
