#include "postedit/models/trainer.hpp"

#include <cstdio>
#include <ostream>

namespace postedit::models {

std::string format_train_report(const TrainReport& report) {
  std::string out = "epoch\ttrain_loss\tdev_metric\n";
  char line[96];
  for (const auto& e : report.epochs) {
    std::snprintf(line, sizeof(line), "%zu\t%.6f\t%.6f\n", e.epoch, e.train_loss,
                  e.dev_metric);
    out += line;
  }
  std::snprintf(line, sizeof(line), "# best_epoch\t%zu\tbest_dev\t%.6f\n",
                report.best_epoch, report.best_dev);
  out += line;
  return out;
}

void write_train_report(std::ostream& out, const TrainReport& report) {
  out << format_train_report(report);
}

}  // namespace postedit::models
