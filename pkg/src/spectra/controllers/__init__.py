from spectra.controllers.tasks import main, task_controller
