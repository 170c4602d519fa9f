var exec = require('cordova/exec');

module.exports = {
    getScanResults: function (success, failure) {
        exec(success, failure, 'WifiWizardLite', 'getScanResults', []);
    },
    startScan: function (success, failure) {
        exec(success, failure, 'WifiWizardLite', 'startScan', []);
    },
    getCurrentSSID: function (success, failure) {
        exec(success, failure, 'WifiWizardLite', 'getCurrentSSID', []);
    }
};
